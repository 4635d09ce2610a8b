//! Encodings of Boolean circuits as Presburger formulas and short generating functions.
//!
//! A circuit over `r` input bits is turned into a 3-CNF by Tseitin's transformation, the CNF
//! into a formula `∃y ∀z Φ(x, y, z)` using bit-extraction gadgets, and `¬Φ` into a short GF
//! whose projections and anti-projections recover the accepted inputs.

pub mod alternating;
pub mod circuit;
pub mod cnf;
pub mod gadgets;
pub mod library;
pub mod segment;

pub use alternating::{encode_alternating, AltPipeline, Prefix};
pub use circuit::{parse_circuit, Circuit, Gate, Wire};
pub use cnf::{bit_atom, bit_system, circuit_to_3cnf, cnf_to_pa, Cnf3, Lit, PaEncoding, Var};
pub use gadgets::{count_certificates, minkowski_gadget, MinkowskiGadget};
pub use segment::{compress_encoding, encode_segment, parse_segment, segment_gf, SegmentEncoding, DEFAULT_LIMIT};
