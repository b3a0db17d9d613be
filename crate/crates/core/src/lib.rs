//! Nets of quinary alternating forms, ternary symmetric bilinear forms and the
//! quintic del Pezzo threefolds they define, computed exactly.

pub mod algebra;
pub mod arithmetic;
pub mod codec;
pub mod correspondence;
pub mod forms;
pub mod geometry;
pub mod group_actions;
pub mod models;
pub mod verify;
