// SPDX-License-Identifier: Apache-2.0

pub mod arith;
pub mod classgroup;
pub mod cli;
pub mod error;
pub mod fieldsearch;
pub mod heckechar;
pub mod newform;
pub mod quadfield;

pub use error::{Error, Result};
