//! Zero-error coding for channels whose noise is symbol displacement.
//!
//! Two channel models are covered, together with their noisy,
//! error-detection and continuous-time variants:
//!
//! * the **shift channel**: particles stored in register cells drift between
//!   `K1` and `K2` cells from their original position, keeping their order;
//! * the **FIFO queue**: packets pass through a single server that holds
//!   each one for a random, bounded number of slots, so delays compound
//!   through waiting.
//!
//! The crate provides exact channel semantics ([`channel`]), optimal code
//! constructions with their decoders and cardinality formulas ([`code`]),
//! capacity calculators ([`capacity`]), and an independent brute-force
//! oracle that certifies all of it at desk scale ([`oracle`]).  The `zecap`
//! binary exposes everything on the command line.
//!
//! ```
//! use zecap::prelude::*;
//!
//! // the optimal weight-2, length-9 code for a unit right shift
//! let code = construct_shift_cw_code(9, 2, 1).unwrap();
//! assert_eq!(code.len(), 10);
//!
//! // certified by exhaustive output enumeration
//! let spec = ChannelSpec::Shift(ShiftSpec::new(1, 0, 1).unwrap());
//! let report = verify_correction(&code, &spec, &Guard::default()).unwrap();
//! assert!(report.verdict);
//!
//! // and the capacity it approaches as n grows
//! let rate = shift_capacity(1, 1, None).unwrap();
//! assert!((rate - 0.6942419136306174).abs() < 1e-9);
//! ```

pub mod capacity;
pub mod channel;
pub mod code;
pub mod error;
pub mod oracle;
pub mod seq;

pub use error::{Error, Result};

/// Convenience re-exports of the most used items.
pub mod prelude {
    pub use crate::capacity::{
        appendix_sweep, char_root, ct_queue_capacity, ct_shift_capacity, detection_capacity,
        cw_rate_queue, cw_rate_shift, finite_length_table, optimal_weight, queue_capacity,
        shift_capacity, NoisyParams, QueueRegime, RootProblem,
    };
    pub use crate::channel::{
        confusable, queue_outputs, sample_queue, sample_shift, shift_outputs, ChannelSpec,
        OutputSet, QueueSpec, ShiftSpec,
    };
    pub use crate::code::{
        construct_detection_code, construct_queue_code, construct_shift_cw_code, decode_queue,
        decode_shift, detect, greedy_reverse_lex, lift_to_pary, queue_code_count,
        shift_code_count, shift_cw_code_count, Code, CodeKind, DetectVerdict, SumChoice,
    };
    pub use crate::error::{Error, Result};
    pub use crate::oracle::{
        estimate_lav, max_code_size, perfect_cover_check, simulate, verify_correction,
        verify_detection, Guard, VerifyReport,
    };
    pub use crate::seq::{
        compose, decompose, from_simplex, to_simplex, BigCount, Decomposition, Sequence,
        SimplexPoint,
    };
}
