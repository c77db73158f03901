//! Dual complexes of simple normal crossing divisors, their cochain complexes
//! and DOT export.

mod complex;
mod dot;

pub use complex::{
    build_dual_complex, coboundary_complex, gamma_cohomology, is_acyclic, Cell, DualComplex,
    Stratum,
};
pub use dot::export_dot;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error("stratum id {0} used twice")]
    DuplicateId(String),
    #[error("stratum {0} has no component indices")]
    EmptyIndices(String),
    #[error("stratum {0} repeats a component index")]
    RepeatedIndex(String),
    #[error("component {0} is listed as several strata")]
    ReducibleComponent(usize),
    #[error("stratum {0} is flagged irreducible but shares its index set")]
    InconsistentIrreducibility(String),
    #[error("stratum {id}: no stratum on face {face:?}")]
    MissingFace { id: String, face: Vec<usize> },
    #[error("stratum {id}: face {face:?} is reducible; name the face strata explicitly")]
    AmbiguousFace { id: String, face: Vec<usize> },
    #[error("stratum {id}: {reason}")]
    BadFaceAssignment { id: String, reason: String },
    #[error("face assignments are not coherent below dimension {dimension}")]
    IncoherentFaces { dimension: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{FgAbGroup, IntMatrix};

    fn hollow_triangle() -> Vec<Stratum> {
        vec![
            Stratum::new("E1", &[1]),
            Stratum::new("E2", &[2]),
            Stratum::new("E3", &[3]),
            Stratum::new("E12", &[1, 2]),
            Stratum::new("E13", &[1, 3]),
            Stratum::new("E23", &[2, 3]),
        ]
    }

    fn solid_triangle() -> Vec<Stratum> {
        let mut s = hollow_triangle();
        s.push(Stratum::new("E123", &[1, 2, 3]));
        s
    }

    fn doubled_edge() -> Vec<Stratum> {
        vec![
            Stratum::new("E1", &[1]),
            Stratum::new("E2", &[2]),
            Stratum::reducible("C", &[1, 2]),
            Stratum::reducible("C'", &[1, 2]),
        ]
    }

    #[test]
    fn builds_triangles() {
        let g = build_dual_complex(&hollow_triangle()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.cell_count(2)), (3, 3, 0));
        assert!(g.is_simplicial() && g.all_irreducible());
        let g = build_dual_complex(&solid_triangle()).unwrap();
        assert_eq!(g.cell_count(2), 1);
        assert_eq!(g.dimension(), Some(2));
    }

    #[test]
    fn doubled_edge_is_a_multigraph() {
        let g = build_dual_complex(&doubled_edge()).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(!g.is_simplicial());
        assert_eq!(gamma_cohomology(&g, 1), FgAbGroup::free(1));
    }

    #[test]
    fn build_errors() {
        let mut s = hollow_triangle();
        s.push(Stratum::new("E1", &[4]));
        assert_eq!(build_dual_complex(&s), Err(DualError::DuplicateId("E1".into())));

        let s = vec![Stratum::new("E1", &[1]), Stratum::new("E12", &[1, 2])];
        assert_eq!(
            build_dual_complex(&s),
            Err(DualError::MissingFace { id: "E12".into(), face: vec![2] })
        );

        let mut s = doubled_edge();
        s.push(Stratum::new("E3", &[3]));
        s.push(Stratum::new("E13", &[1, 3]));
        s.push(Stratum::new("E23", &[2, 3]));
        s.push(Stratum::new("P", &[1, 2, 3]));
        assert_eq!(
            build_dual_complex(&s),
            Err(DualError::AmbiguousFace { id: "P".into(), face: vec![1, 2] })
        );
        let last = s.len() - 1;
        s[last] = Stratum::new("P", &[1, 2, 3]).with_faces(&["E23", "E13", "C'"]);
        let g = build_dual_complex(&s).unwrap();
        assert_eq!(g.cell_count(2), 1);

        let s = vec![Stratum::new("A", &[1]), Stratum::new("B", &[1])];
        assert_eq!(build_dual_complex(&s), Err(DualError::ReducibleComponent(1)));
    }

    #[test]
    fn edge_coboundary_orientation() {
        let g = build_dual_complex(&[
            Stratum::new("E1", &[1]),
            Stratum::new("E2", &[2]),
            Stratum::new("E12", &[1, 2]),
        ])
        .unwrap();
        assert_eq!(g.coboundary(0), IntMatrix::from_rows(&[[-1, 1]]));
    }

    #[test]
    fn single_vertex() {
        let g = build_dual_complex(&[Stratum::new("E1", &[1])]).unwrap();
        let c = coboundary_complex(&g);
        assert_eq!((c.min_degree(), c.max_degree()), (0, 0));
        assert_eq!(c.cohomology(0), FgAbGroup::free(1));
        assert!(is_acyclic(&g));
        assert_eq!(export_dot(&g), "graph gamma {\n  \"E1\" [label=\"1\"];\n}\n");
    }

    #[test]
    fn triangle_cohomology() {
        let hollow = build_dual_complex(&hollow_triangle()).unwrap();
        assert_eq!(gamma_cohomology(&hollow, 0), FgAbGroup::free(1));
        assert_eq!(gamma_cohomology(&hollow, 1), FgAbGroup::free(1));
        assert!(!is_acyclic(&hollow));

        let solid = build_dual_complex(&solid_triangle()).unwrap();
        assert!((&solid.coboundary(1) * &solid.coboundary(0)).is_zero());
        assert!(gamma_cohomology(&solid, 1).is_trivial());
        assert!(gamma_cohomology(&solid, 2).is_trivial());
        assert!(is_acyclic(&solid));
        assert_eq!(solid.euler_characteristic(), 1);
    }

    #[test]
    fn disjoint_vertices_are_not_acyclic() {
        let g = build_dual_complex(&[Stratum::new("a", &[1]), Stratum::new("b", &[2])]).unwrap();
        assert!(!is_acyclic(&g));
        assert_eq!(g.connected_components(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn dot_output() {
        let g = build_dual_complex(&hollow_triangle()).unwrap();
        let dot = export_dot(&g);
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert!(dot.contains("\"E1\" -- \"E2\" [label=\"E12\"];"));
        let g = build_dual_complex(&doubled_edge()).unwrap();
        let dot = export_dot(&g);
        assert_eq!(dot.matches("\"E1\" -- \"E2\"").count(), 2);
        assert_eq!(dot, export_dot(&g));
    }
}
