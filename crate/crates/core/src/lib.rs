pub mod cyclotomic;
pub mod linalg;
pub mod multimatrix;
pub mod hopf;
pub mod group;
pub mod models;
pub mod corep;
pub mod category;
pub mod checks;
