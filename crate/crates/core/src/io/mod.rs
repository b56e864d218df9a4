//! JSON encodings and the document format.

mod codec;
mod document;

pub use codec::{
    decode_form_canonical, decode_poly, decode_scalar, decode_vector_canonical, encode_form,
    encode_poly, encode_vector, Encode,
};
pub use document::{encode_frame, parse_frame, parse_points, Document};
