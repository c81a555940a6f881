pub mod field;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod relations;
pub mod symmetry;
pub mod verify;
