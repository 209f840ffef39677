//! Exact verification of the sumset bound `|A + B + U|^2 >= |A| |B| |U|^2`
//! for `U` inside a quasicube, an instrumented replay of its inductive proof,
//! and desk-scale scans and searches over small instances.

mod check;
mod scan;
mod search;
mod trace;

pub use check::{check_theorem, ratio_sq, CheckReport};
pub use scan::{estimate_search_space, exhaustive_scan, Instance, ScanSpec, ScanSummary, USource};
pub use search::{extremal_search, SearchResult, SearchSpec, TrajectoryPoint};
pub use trace::{
    proof_trace, proof_trace_with_witness, Branch, ChildTrace, FiberSizes, FiberingDetail, FoliationDetail, ProofTrace,
    Relation, Step, SumRow,
};

/// String encodings for arbitrary-precision values in JSON.
pub(crate) mod bigfmt {
    use num_bigint::{BigInt, BigUint};
    use num_rational::BigRational;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn parse_ratio(s: &str) -> Option<BigRational> {
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        (d != BigInt::from(0)).then(|| BigRational::new(n, d))
    }

    pub mod uint {
        use super::*;

        pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&v.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
            let s = String::deserialize(d)?;
            s.parse().map_err(D::Error::custom)
        }
    }

    pub mod ratio {
        use super::*;

        pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&v.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
            let s = String::deserialize(d)?;
            parse_ratio(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
        }
    }

    pub mod opt_ratio {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(r) => s.serialize_some(&r.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| parse_ratio(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
                .transpose()
        }
    }
}
