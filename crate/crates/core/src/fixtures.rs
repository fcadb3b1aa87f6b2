//! The bundled experimental items as parsed trees plus their expected
//! analyses, used by the `experiment` command and the test suites.

use thiserror::Error;

use crate::tree::{parse_tree, DependencyDistance, SyntacticTree, TreeError};

pub const TREE1_SOURCE: &str = include_str!("../../../fixtures/tree1.tree");
pub const TREE2_SOURCE: &str = include_str!("../../../fixtures/tree2.tree");
pub const BOOST4N_SOURCE: &str = include_str!("../../../fixtures/boost4N.tree");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureId {
    Tree1,
    Tree2,
    Boost4N,
}

impl FixtureId {
    pub fn from_name(name: &str) -> Result<Self, FixtureError> {
        match name {
            "tree1" => Ok(FixtureId::Tree1),
            "tree2" => Ok(FixtureId::Tree2),
            "boost4N" | "boost4n" => Ok(FixtureId::Boost4N),
            other => Err(FixtureError::UnknownFixture(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FixtureId::Tree1 => "tree1",
            FixtureId::Tree2 => "tree2",
            FixtureId::Boost4N => "boost4N",
        }
    }

    pub fn source(&self) -> &'static str {
        match self {
            FixtureId::Tree1 => TREE1_SOURCE,
            FixtureId::Tree2 => TREE2_SOURCE,
            FixtureId::Boost4N => BOOST4N_SOURCE,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Expectations {
    pub dependency_distances: Vec<DependencyDistance>,
    /// Left edge counts per gap of the projected (pre-constraint) tree.
    pub projected_edge_counts: Vec<usize>,
    /// Proposed annotation after constraint rewriting with defaults.
    pub proposed: &'static str,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: FixtureId,
    pub tree: SyntacticTree,
    pub expect: Expectations,
}

pub fn load_fixture(id: FixtureId) -> Result<Fixture, FixtureError> {
    let tree = parse_tree(id.source())?;
    let expect = match id {
        FixtureId::Tree1 => Expectations {
            dependency_distances: vec![Some(1), Some(2), Some(1), None],
            projected_edge_counts: vec![1, 2, 1],
            proposed: "{[[wa ga shi ya sa N no][ma me u ri ya ku ga]][[me mo ga ki o][mo ra i ma \\shi ta]].}",
        },
        FixtureId::Tree2 => Expectations {
            dependency_distances: vec![Some(3), Some(1), Some(1), None],
            projected_edge_counts: vec![2, 1, 1],
            proposed: "{[wa ga shi ya sa N ga][[ma me u ri ya ku no][me mo ga ki o][mo ra i ma \\shi ta]].}",
        },
        FixtureId::Boost4N => Expectations {
            dependency_distances: vec![
                Some(6),
                Some(1),
                Some(1),
                Some(1),
                Some(2),
                Some(1),
                None,
            ],
            projected_edge_counts: vec![3, 1, 1, 1, 1, 1],
            proposed: "{[ki no o][[[[ya \\ma na shi no][mo \\ri gu chi no]][[a \\ni yo me no][wa \\ru gu chi o]]][ko o e N de][tsu ta e ta]].}",
        },
    };
    Ok(Fixture { id, tree, expect })
}

pub fn all_fixtures() -> Vec<Fixture> {
    [FixtureId::Tree1, FixtureId::Tree2, FixtureId::Boost4N]
        .into_iter()
        .map(|id| load_fixture(id).expect("bundled fixtures parse"))
        .collect()
}
