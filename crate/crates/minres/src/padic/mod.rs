//! Exact valuations and arithmetic in `Q_p` and in finite towers of
//! unramified and Eisenstein extensions, with explicit precision tracking.

mod field;
pub mod fq;
mod pad;
mod val;

pub use field::{coerce, EltVal, FieldElt, LocalField, StepKind};
pub use fq::{Fq, FqElt, FqPoly};
pub use pad::{modinv, PCtx, Pad};
pub use val::{
    big_to_i64, ceil_q, floor_q, fmt_big_q, fmt_q, is_prime, ordp, ordp_i64, ordp_int, parse_q, q, qi,
    split_p, ValQ, Q64,
};
