pub mod binary;
pub mod error;
pub mod nat;
pub mod phi;
pub mod search;
pub mod theta;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use nat::{Binary, Nat};
