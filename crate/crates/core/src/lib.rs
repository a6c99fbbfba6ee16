//! Wiener index computation on trees and a constructive solver for the
//! inverse problem: given `n` and `w`, build a tree on `n` vertices whose
//! Wiener index is `w`.

pub mod audit;
pub mod canon;
pub mod caterpillar;
pub mod edgelist;
pub mod error;
pub mod exact;
pub mod fit;
pub mod formula;
pub mod oracle;
pub mod spectrum;
pub mod transform;
pub mod tree;
pub mod wiener;

pub use audit::{audit_family, AuditGrid, AuditReport, AuditRow, Identity, Verdict};
pub use canon::{canonical_code, CanonicalCode};
pub use caterpillar::{construct, param_domain, CaterpillarSpec, Family};
pub use edgelist::{parse_edge_list, to_edge_list};
pub use error::{Error, Result};
pub use fit::{fit_closed_form, DegreeCaps, FittedForm};
pub use formula::{formula_value, RationalValue};
pub use oracle::{exact_spectrum, ExactSpectrum};
pub use spectrum::{bounds, build_index, solve, IntervalReport, Solution, SpectrumIndex, Witness};
pub use transform::{apply_move, progression, schedule, verify_schedule, Progression};
pub use tree::{Tree, Vertex};
pub use wiener::{wiener, wiener_reference, WienerValue};
