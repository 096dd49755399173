pub mod carleson;
pub mod config;
pub mod entire;
pub mod error;
pub mod inequality;
pub mod projection;
pub mod quadrature;
pub mod report;
pub mod spaces;
pub mod special;
pub mod verify;

pub use config::Config;
pub use entire::EntireFunction;
pub use error::{Error, Result};
