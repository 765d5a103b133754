//! Weil settings, the Weil test, element arithmetic and tensor products.

mod decide;
mod element;
mod settings;
mod tensor;

pub use decide::{
    weil_settings_from_basis, weil_test, weil_test_with, NotWeil, WeilTest, WeilTestOptions,
};
pub use element::WeilElement;
pub use settings::{WeilSettings, DEFAULT_SIZE_LIMIT};
pub use tensor::{kronecker, weil_tensor};
