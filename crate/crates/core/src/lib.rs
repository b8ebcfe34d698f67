pub mod exactalg;
pub mod pairclasses;
pub mod extcalc;
pub mod catalog;
pub mod euler3;
pub mod wallcross;
