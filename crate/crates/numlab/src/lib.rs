//! Number-theoretic experiments with short generating functions: segments of squares and
//! primes, four-square counts and divisor sums, square congruences, prime counting by Hadamard
//! products, and arithmetic progressions in sets defined by existential formulas.

pub mod ap;
pub mod jacobi;
pub mod segments;
pub mod sqcong;

pub use ap::{ap_threshold, convexity_progression, find_ap, parse_ap_set, ApWitness};
pub use jacobi::{factor_semiprime_from_sigma, jacobi_rhs, r4_coefficients, sigma, sigma_from_r4};
pub use segments::{is_prime, prime_pi, primes_below, segment_set, Segment, SegmentKind};
pub use sqcong::{count_square_roots, count_square_roots_brute};
