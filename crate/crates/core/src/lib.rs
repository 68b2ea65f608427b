pub mod charvariety;
pub mod classify;
pub mod corpus;
pub mod mcgdyn;
pub mod numfield;
pub mod random;
pub mod sl2core;
pub mod surface;
pub mod verify;
