//! The universal formal group law, cobordism classes and Chow-side models.

mod chow;
mod context;
mod lazard;
mod reps;

pub use chow::ChowModel;
pub use context::{b_name, primed_name, AmbientContext, ContextConfig, GEOMETRIC_VARS};
pub use lazard::LazardElement;
pub use reps::{is_prime, CosetReps};
