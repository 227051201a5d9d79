//! Exact computations in the bounded derived category of linear A_n:
//! t-structures, hearts, recollements and the gluing of t-structures along them.

pub mod exactmat;
pub mod repcat;
pub mod derivedcat;
pub mod tstr;
pub mod recol;
pub mod verify;
