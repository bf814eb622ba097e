pub mod bounds;
pub mod predict;
pub mod torus_cmd;
pub mod verify_algebra;
pub mod verify_sasakian;
