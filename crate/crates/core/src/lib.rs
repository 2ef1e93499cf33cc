pub mod exact;
pub mod ncalgebra;
pub mod rb_operad;
pub mod rf_operad;
pub mod scalar;
pub mod symgroup;
pub mod verify;
pub mod wordmodels;
