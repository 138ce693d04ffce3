//! The chapters of `book/` compiled as documentation, so that every Rust
//! snippet in the guide runs as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/fields.md")]
pub mod fields {}

#[doc = include_str!("../../../book/src/standard-form.md")]
pub mod standard_form {}

#[doc = include_str!("../../../book/src/maximal-order.md")]
pub mod maximal_order {}

#[doc = include_str!("../../../book/src/orders.md")]
pub mod orders {}

#[doc = include_str!("../../../book/src/drinfeld-modules.md")]
pub mod drinfeld_modules {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
