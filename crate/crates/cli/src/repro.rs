//! Named reproductions of the worked examples, each with a stored result.

use legalsys::families::{self, FamilyBundle};
use legalsys::graph::{find_hamiltonian_cycle, Graph};
use legalsys::io::{graph_digest, Certificate};
use legalsys::legal::{
    exists_legal_state, exists_legal_system, search_partition_system, GeneralSearch, verify_with, MoveSystem, PartitionSearch, SearchMode, SearchOptions,
    VerifyOptions,
};
use legalsys::{Error, Result, VertexSet};
use serde::{Deserialize, Serialize};

pub const IDS: &[&str] = &[
    "example-2-3",
    "example-2-3-illegal",
    "cube",
    "wagner",
    "wagner-no-colored",
    "tbws",
    "cell24",
    "icosahedron",
    "cell600",
    "brinkmann",
    "dual-lobell-5",
    "dual-lobell-6",
    "dual-lobell-7",
    "dual-lobell-8",
    "dual-lobell-9",
    "dual-lobell-10",
    "dual-lobell-11",
    "dual-lobell-12",
    "blowup-3-7",
    "lambda-5-3",
    "lambda-6-5",
    "tutte-hamilton",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReproResult {
    Orbit {
        id: String,
        certificate: Certificate,
    },
    /// A colouring search hit, with its certificate.
    Search {
        id: String,
        examined: u64,
        certificate: Certificate,
    },
    NoColoredSystem {
        id: String,
        graph: String,
        examined: u64,
    },
    /// Exhaustive over every move system. `first_legal_state` shows that
    /// single legal states still exist.
    NoLegalSystem {
        id: String,
        graph: String,
        vertices: usize,
        first_legal_state: Option<Vec<usize>>,
    },
    NoHamiltonianCycle {
        id: String,
        graph: String,
        vertices: usize,
    },
}

impl ReproResult {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    /// Compares the verdict-relevant fields only.
    pub fn same_verdict(&self, other: &ReproResult) -> bool {
        use ReproResult::*;
        match (self, other) {
            (Orbit { id: a, certificate: c }, Orbit { id: b, certificate: d })
            | (Search { id: a, certificate: c, .. }, Search { id: b, certificate: d, .. }) => {
                a == b && c.graph == d.graph && c.same_verdict(d)
            }
            _ => self == other,
        }
    }

    pub fn summary(&self) -> String {
        use ReproResult::*;
        match self {
            Orbit { certificate: c, .. } | Search { certificate: c, .. } => {
                format!("{:?} rank {} orbit {}", c.verdict, c.rank, c.orbit_size).to_lowercase()
            }
            NoColoredSystem { examined, .. } => format!("no legal colored system ({examined} partitions, exhaustive)"),
            NoLegalSystem { vertices, .. } => format!("no legal system ({vertices} vertices, exhaustive over all systems)"),
            NoHamiltonianCycle { vertices, .. } => format!("no hamiltonian cycle ({vertices} vertices, exhaustive)"),
        }
    }
}

fn orbit(id: &str, g: &Graph, m: &MoveSystem, s: &VertexSet) -> Result<ReproResult> {
    let report = verify_with(g, m, s, &VerifyOptions::default())?;
    Ok(ReproResult::Orbit {
        id: id.to_string(),
        certificate: Certificate::new(g, m, s, &report),
    })
}

fn bundled(id: &str, b: FamilyBundle) -> Result<ReproResult> {
    let (m, s) = b
        .witness
        .as_ref()
        .ok_or_else(|| Error::invalid(format!("{} has no bundled system", b.name)))?;
    orbit(id, &b.graph, m, s)
}

pub fn run(id: &str) -> Result<ReproResult> {
    match id {
        "example-2-3" => bundled(id, families::example_2_3()),
        "example-2-3-illegal" => {
            let b = families::example_2_3();
            let s = b.graph.set_of_labels(&["1", "2", "4"]);
            orbit(id, &b.graph, &b.witness.as_ref().expect("bundled").0, &s)
        }
        "cube" => bundled(id, families::hypercube(3)?),
        "wagner" => bundled(id, families::wagner()),
        "wagner-no-colored" => {
            let g = families::wagner().graph;
            match search_partition_system(&g, SearchMode::Exhaustive, &SearchOptions::default())? {
                PartitionSearch::None { examined } => Ok(ReproResult::NoColoredSystem {
                    id: id.to_string(),
                    graph: graph_digest(&g),
                    examined,
                }),
                other => Err(Error::invalid(format!("expected no colored system, got {other:?}"))),
            }
        }
        "tbws" => bundled(id, families::tbws_figure()),
        "cell24" => bundled(id, families::cell24()),
        "icosahedron" => bundled(id, families::icosahedron()),
        "cell600" => bundled(id, families::cell600()),
        "brinkmann" => {
            let g = families::brinkmann().graph;
            match search_partition_system(&g, SearchMode::Colorings, &SearchOptions::default())? {
                PartitionSearch::Found {
                    system,
                    state,
                    examined,
                    ..
                } => {
                    let report = verify_with(&g, &system, &state, &VerifyOptions::default())?;
                    Ok(ReproResult::Search {
                        id: id.to_string(),
                        examined,
                        certificate: Certificate::new(&g, &system, &state, &report),
                    })
                }
                other => Err(Error::invalid(format!("colouring search found nothing: {other:?}"))),
            }
        }
        "blowup-3-7" => bundled(id, families::blowup_cube(3, 7, None)?),
        "lambda-5-3" => {
            let g = families::bipartite_cone(5, 3)?.graph;
            match exists_legal_system(&g, u64::MAX)? {
                GeneralSearch::None { .. } => Ok(ReproResult::NoLegalSystem {
                    id: id.to_string(),
                    graph: graph_digest(&g),
                    vertices: g.n(),
                    first_legal_state: exists_legal_state(&g)?.map(|s| s.to_vec()),
                }),
                GeneralSearch::Found { system, state } => Err(Error::invalid(format!(
                    "found a legal system {:?} from {state}",
                    system.moves()
                ))),
            }
        }
        "lambda-6-5" => bundled(id, families::bipartite_cone(6, 5)?),
        "tutte-hamilton" => {
            let g = families::tutte().graph;
            match find_hamiltonian_cycle(&g)? {
                None => Ok(ReproResult::NoHamiltonianCycle {
                    id: id.to_string(),
                    graph: graph_digest(&g),
                    vertices: g.n(),
                }),
                Some(c) => Err(Error::invalid(format!("found a cycle {c:?}"))),
            }
        }
        _ => match id.strip_prefix("dual-lobell-").and_then(|n| n.parse().ok()) {
            Some(n) if IDS.contains(&id) => bundled(id, families::dual_lobell(n)?),
            _ => Err(Error::invalid(format!("unknown example {id}; try `repro --list`"))),
        },
    }
}

macro_rules! goldens {
    ($($id:literal),* $(,)?) => {
        pub fn golden_text(id: &str) -> Option<&'static str> {
            match id {
                $($id => Some(include_str!(concat!("../golden/", $id, ".json"))),)*
                _ => None,
            }
        }
    };
}

goldens!(
    "example-2-3",
    "example-2-3-illegal",
    "cube",
    "wagner",
    "wagner-no-colored",
    "tbws",
    "cell24",
    "icosahedron",
    "cell600",
    "brinkmann",
    "dual-lobell-5",
    "dual-lobell-6",
    "dual-lobell-7",
    "dual-lobell-8",
    "dual-lobell-9",
    "dual-lobell-10",
    "dual-lobell-11",
    "dual-lobell-12",
    "blowup-3-7",
    "lambda-5-3",
    "lambda-6-5",
    "tutte-hamilton",
);

pub fn golden(id: &str) -> Option<ReproResult> {
    golden_text(id).and_then(|t| serde_json::from_str(t).ok())
}
