//! Exact computations on varieties cut out by monomial relations
//! `t_{m+j} = λ_j * t1^a(1,j) * ... * tm^a(m,j)`.
//!
//! The crate decides membership in the vanishing ideal by computing the
//! image under the substitution map, produces explicit cofactor
//! certificates, checks them by expansion, and reports the dimension `m`.
//!
//! ```
//! use monovar::{parse_poly, VarSymbolTable, VarietySpec};
//!
//! let spec: VarietySpec = "m=1 k=1\nrel 1: lambda=4 exps=3\n".parse().unwrap();
//! let vars = VarSymbolTable::standard(spec.n());
//! let f = parse_poly("t2^2 - 16*t1^6", &vars).unwrap();
//! let r = spec.certify(&f).unwrap();
//! assert!(r.normal_form.is_zero());
//! assert!(spec.verify_certificate(&f, &r).unwrap());
//! ```

pub mod cli;
pub mod ideal;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod text;

pub use ideal::{
    parse_spec_file, Certificate, IdealError, ReductionResult, SpecFileError, VarietySpec,
};
pub use oracle::{oracle_member, sample_variety_point, SampleConfig};
pub use poly::{delta_expand, Monomial, PolyError, Polynomial};
pub use rational::Rational;
pub use text::{parse_poly, print_poly, ParseError, VarSymbolTable};
