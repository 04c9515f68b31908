//! Small named reference systems.

use crate::connectivity::{build_system, ConnectivitySystem, Descriptor};

fn graph_boundary(label: &str, vertices: &[&str], edges: &[(usize, usize)]) -> ConnectivitySystem {
    build_system(Descriptor::GraphBoundary {
        vertices: vertices.iter().map(|v| v.to_string()).collect(),
        edges: edges.to_vec(),
    })
    .expect("reference graphs are well formed")
    .with_label(label)
}

/// `f(A) = min(|A|, n - |A|)` on `n` elements.
pub fn min_cardinality(n: usize) -> ConnectivitySystem {
    build_system(Descriptor::MinCardinality { n })
        .expect("valid ground-set size")
        .with_label(format!("min_cardinality-{}", n))
}

/// `min(|A|, 3 - |A|)` on three elements.
pub fn sys_min3() -> ConnectivitySystem {
    min_cardinality(3).with_label("SYS-MIN3")
}

/// Edge boundary of the path a-b-c.
pub fn sys_p3() -> ConnectivitySystem {
    graph_boundary("SYS-P3", &["a", "b", "c"], &[(0, 1), (1, 2)])
}

/// Edge boundary of the 4-cycle.
pub fn sys_c4() -> ConnectivitySystem {
    graph_boundary("SYS-C4", &["a", "b", "c", "d"], &[(0, 1), (1, 2), (2, 3), (3, 0)])
}

/// Edge boundary of the complete graph on four vertices.
pub fn sys_k4() -> ConnectivitySystem {
    graph_boundary(
        "SYS-K4",
        &["a", "b", "c", "d"],
        &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
    )
}

/// The four named reference systems.
pub fn reference_systems() -> Vec<ConnectivitySystem> {
    vec![sys_min3(), sys_p3(), sys_c4(), sys_k4()]
}
