//! The 90-point orbit of an A6 subgroup of PGL(3,q): finite fields, the
//! projective plane, group generation, arc and completeness checks, and the
//! symbolic resultant pipeline that bounds the exceptional characteristics.

pub mod error;
pub mod field;
pub mod group;
pub mod orbit;
pub mod plane;
pub mod symcalc;

pub use error::{Error, Result};
pub use field::{ElemChoice, FieldCtx, FieldElem, SpecialElems, SqrtHome};
pub use group::{Gen, ProjectivityGroup, Word};
pub use orbit::{ArcVerdict, CompletenessMethod, CompletenessVerdict, LineSpectrum, MdsCode, OrbitResult};
pub use plane::{Mat3, ProjLine, ProjPoint};
pub use symcalc::{DeltaReport, PairRecord, PrimeStatus};
