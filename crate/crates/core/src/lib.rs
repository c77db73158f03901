pub mod abelian;
pub mod chowcalc;
pub mod complexes;
pub mod dualcomplex;
pub mod par;
pub mod spectral;
