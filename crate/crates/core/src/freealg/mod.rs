//! Words, linear combinations of words, multi-leg tensors and generator-table
//! maps over an arbitrary coefficient domain. Nothing here knows about
//! relations; reduction is supplied by a [`Normalizer`].

mod element;
mod map;
mod tensor;
mod word;

pub use element::Element;
pub(crate) use element::format_word;
pub use map::{apply_map, apply_map_tensor_word, apply_map_word, apply_map_tensor, star, tensor_product_map, FreeNormalizer, Image, LegMap, MapKind, MapSpec, Normalizer};
pub use tensor::{TensorElement, TensorKey};
pub use word::{Letter, Word};

use std::sync::Arc;

/// Name of a presentation; elements carry it so mixing is detected.
pub type AlgName = Arc<str>;
