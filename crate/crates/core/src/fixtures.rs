//! Small reference instances used by tests, the CLI and the demo.

use crate::graph::{Arc, Flow, StdArc, StdInstance, UncapInstance};
use crate::rational::{int, ratio, Extended};

/// Nodes 0, 1 and sink 2; arcs 0->1 (1), 1->2 (1/2), 0->2 (1/4); demands (-2, 0).
pub fn f1() -> UncapInstance {
    UncapInstance::new(
        3,
        2,
        vec![Arc::regular(0, 1, int(1)), Arc::regular(1, 2, ratio(1, 2)), Arc::regular(0, 2, ratio(1, 4))],
        vec![int(-2), int(0), int(0)],
        None,
        None,
    )
    .expect("fixture is valid")
}

/// Nodes 0, 1, 2 and sink 3; arcs 0->1, 2->1, 2->3 (gain 1), 0->3, 1->3 (gain 1/4);
/// demands (-1, 0, -1); initial flow 1 on 2->1.
pub fn f5() -> UncapInstance {
    let mut init = Flow::zero(5);
    init[1] = int(1);
    UncapInstance::new(
        4,
        3,
        vec![
            Arc::regular(0, 1, int(1)),
            Arc::regular(2, 1, int(1)),
            Arc::regular(2, 3, int(1)),
            Arc::regular(0, 3, ratio(1, 4)),
            Arc::regular(1, 3, ratio(1, 4)),
        ],
        vec![int(-1), int(0), int(-1), int(0)],
        None,
        Some(init),
    )
    .expect("fixture is valid")
}

/// Standard form: node 0 and sink 1; arcs 1->0 (gain 1, cap 3), 0->1 (gain 2, uncapacitated).
pub fn f2() -> StdInstance {
    StdInstance::new(
        2,
        1,
        vec![
            StdArc { tail: 1, head: 0, gain: int(1), capacity: Extended::Finite(int(3)) },
            StdArc { tail: 0, head: 1, gain: int(2), capacity: Extended::Infinite },
        ],
    )
    .expect("fixture is valid")
}

/// One node feeding the sink through a unit-gain arc.
pub fn single_arc() -> UncapInstance {
    UncapInstance::new(2, 1, vec![Arc::regular(0, 1, int(1))], vec![int(0), int(0)], None, None)
        .expect("fixture is valid")
}
