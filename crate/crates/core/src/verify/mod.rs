//! Verification suites and the golden tensor table of degree 2 over `F_2`.

mod suites;
mod table;

pub use suites::{standard_family, verify, Check, Outcome, Suite, VerifyReport};
pub use table::{decompose, table_family, tensor_table, TableCell, TensorTable, GOLDEN, TABLE_NAMES};
