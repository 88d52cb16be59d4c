//! Simple games on up to 64 players: exact weightedness testing with
//! certificates of nonweightedness, desirability and completeness, game
//! composition and decomposition, the catalog of indecomposable ideal weighted
//! games, and the canonical decomposition of ideal weighted games.
//!
//! ```
//! use simplegames::{canonical_decompose, is_weighted, Coalition, SimpleGame};
//!
//! let permanent = Coalition::full(5);
//! let council = SimpleGame::from_predicate(15, |x| permanent.is_subset_of(x) && x.len() >= 9)?;
//! assert!(is_weighted(&council));
//! let form = canonical_decompose(&council)?.unwrap();
//! assert_eq!(form.to_string(), "U2 ∘ U2 ∘ U2 ∘ U2 ∘ U2 ∘ H(10,4)");
//! # Ok::<(), simplegames::Error>(())
//! ```

pub mod canonical;
pub mod catalog;
pub mod certificates;
pub mod coalition;
pub mod composition;
pub mod desirability;
pub mod enumerate;
pub mod error;
pub mod game;
pub mod harness;
pub mod io;
pub mod isomorphism;
pub mod lp;
pub mod profile;
pub mod trade;
pub mod weights;

pub use canonical::{
    build_from_canonical, canonical_analysis, canonical_decompose, recognize_ideal_weighted, CanonicalForm,
    CanonicalOutcome, Head, NotIdealReason,
};
pub use catalog::{classify, make_type, CatalogParams, CatalogTag, Family, GridLimits, Mode};
pub use certificates::{certificate_for, CaseCertificate, CaseId, CertificateKind, Variant};
pub use coalition::Coalition;
pub use composition::{compose, find_decompositions, CompositionSpec, Decomposition};
pub use desirability::{desirability, is_complete, DesirabilityRelation};
pub use enumerate::enumerate_games;
pub use error::{Error, Result};
pub use game::SimpleGame;
pub use io::LabeledGame;
pub use isomorphism::isomorphic;
pub use lp::Rational;
pub use profile::{CompleteProfile, Leveled};
pub use trade::{search_certificate, TradingTransform};
pub use weights::{farkas_certificate, is_weighted, synthesize_weights, verify_representation, WeightedRepresentation};
