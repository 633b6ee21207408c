//! Output documents for every subcommand: one serializable struct per
//! command, printed either as a single JSON line (machine) or as derived
//! human-readable text. Field order is fixed by the struct declarations,
//! so machine output is byte-stable for equal inputs and seeds.

use hypalg::{format_scalar, Element, Scalar};
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Human,
    Machine,
}

pub type PackedScalar = [f64; 2];

pub fn pack_scalar(z: Scalar) -> PackedScalar {
    [z.re, z.im]
}

pub fn pack_element(e: &Element) -> Vec<PackedScalar> {
    e.coeffs().iter().map(|&z| pack_scalar(z)).collect()
}

pub fn show_element(e: &Element) -> String {
    let parts: Vec<String> = e.coeffs().iter().map(|&z| format_scalar(z)).collect();
    parts.join(" ")
}

fn emit<T: Serialize>(doc: &T) {
    println!(
        "{}",
        serde_json::to_string(doc).expect("documents serialize")
    );
}

#[derive(Serialize)]
pub struct VerifyDoc {
    pub command: &'static str,
    pub field: String,
    pub dim: usize,
    pub residuals: AxiomResiduals,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct AxiomResiduals {
    pub commutativity: f64,
    pub unit: f64,
    pub associativity: f64,
}

impl VerifyDoc {
    pub fn print(&self, format: OutputFormat) {
        match format {
            OutputFormat::Machine => emit(self),
            OutputFormat::Human => {
                println!("algebra over {}, dimension {}", self.field, self.dim);
                println!("commutativity residual: {:e}", self.residuals.commutativity);
                println!("unit-law residual:      {:e}", self.residuals.unit);
                println!("associativity residual: {:e}", self.residuals.associativity);
                println!("tolerance:              {:e}", self.tolerance);
                println!("{}", if self.pass { "PASS" } else { "FAIL" });
            }
        }
    }
}

#[derive(Serialize)]
pub struct SystemResiduals {
    pub idempotency: f64,
    pub orthogonality: f64,
    pub completeness: f64,
}

#[derive(Serialize)]
pub struct IdempotentsDoc {
    pub command: &'static str,
    pub provenance: &'static str,
    pub seed: u64,
    pub dim: usize,
    pub count: usize,
    pub idempotents: Vec<Vec<PackedScalar>>,
    pub residuals: SystemResiduals,
    pub rank: usize,
    pub complete: bool,
    pub pass: bool,
    #[serde(skip)]
    pub pretty: Vec<String>,
}

impl IdempotentsDoc {
    pub fn print(&self, format: OutputFormat) {
        match format {
            OutputFormat::Machine => emit(self),
            OutputFormat::Human => {
                match self.provenance {
                    "file" => println!("verified {} idempotent(s) from file", self.count),
                    _ => println!("discovered {} idempotent(s) (seed {})", self.count, self.seed),
                }
                for (k, row) in self.pretty.iter().enumerate() {
                    println!("  i{}: {}", k + 1, row);
                }
                println!("idempotency residual:   {:e}", self.residuals.idempotency);
                println!("orthogonality residual: {:e}", self.residuals.orthogonality);
                println!("completeness residual:  {:e}", self.residuals.completeness);
                println!("rank: {}/{}", self.rank, self.count);
                if !self.complete {
                    println!(
                        "note: incomplete system ({} < dim {})",
                        self.count, self.dim
                    );
                }
                println!("{}", if self.pass { "PASS" } else { "FAIL" });
            }
        }
    }
}

#[derive(Serialize)]
pub struct ComponentDoc {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<PackedScalar>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<Vec<f64>>,
}

#[derive(Serialize)]
pub struct SolveDoc {
    pub command: &'static str,
    pub dim: usize,
    pub roots: Vec<Vec<PackedScalar>>,
    pub residuals: Vec<f64>,
    pub components: Vec<ComponentDoc>,
    pub truncated: bool,
    pub parametric: bool,
    #[serde(skip)]
    pub pretty_roots: Vec<String>,
}

impl SolveDoc {
    pub fn print(&self, format: OutputFormat) {
        match format {
            OutputFormat::Machine => emit(self),
            OutputFormat::Human => {
                for (c, comp) in self.components.iter().enumerate() {
                    match comp.kind {
                        "finite" => println!(
                            "component {}: {} root(s) in K",
                            c + 1,
                            comp.roots.as_ref().map_or(0, |r| r.len())
                        ),
                        "all_of_k" => {
                            println!(
                                "component {}: identically zero (every value solves it)",
                                c + 1
                            )
                        }
                        _ => println!("component {}: nonzero constant (no solutions)", c + 1),
                    }
                }
                println!("{} root(s)", self.pretty_roots.len());
                for (row, res) in self.pretty_roots.iter().zip(&self.residuals) {
                    println!("  {row}   (residual {res:e})");
                }
                if self.truncated {
                    println!("note: enumeration truncated at the root cap");
                }
                if self.parametric {
                    println!("note: parametric family; free components shown as 0");
                }
            }
        }
    }
}

#[derive(Serialize)]
pub struct CrCheckDoc {
    pub command: &'static str,
    pub function: String,
    pub points: usize,
    pub seed: u64,
    pub step: f64,
    pub tolerance: f64,
    pub per_direction: Vec<f64>,
    pub max_residual: f64,
    pub verdict: bool,
}

impl CrCheckDoc {
    pub fn print(&self, format: OutputFormat) {
        match format {
            OutputFormat::Machine => emit(self),
            OutputFormat::Human => {
                println!(
                    "sampled {} point(s), step {:e} (seed {})",
                    self.points, self.step, self.seed
                );
                for (k, r) in self.per_direction.iter().enumerate() {
                    println!("direction e_{}: max residual {:e}", k + 1, r);
                }
                println!("max residual: {:e}", self.max_residual);
                println!(
                    "{} at tolerance {:e}",
                    if self.verdict {
                        "HOLOMORPHIC"
                    } else {
                        "NOT HOLOMORPHIC"
                    },
                    self.tolerance
                );
            }
        }
    }
}

#[derive(Serialize)]
pub struct TaylorDoc {
    pub command: &'static str,
    pub order: u32,
    pub taylor: Vec<PackedScalar>,
    pub direct: Vec<PackedScalar>,
    pub difference: Vec<PackedScalar>,
    pub max_abs_difference: f64,
    #[serde(skip)]
    pub pretty: [String; 3],
}

impl TaylorDoc {
    pub fn print(&self, format: OutputFormat) {
        match format {
            OutputFormat::Machine => emit(self),
            OutputFormat::Human => {
                println!("taylor sum (order {}): {}", self.order, self.pretty[0]);
                println!("direct evaluation:     {}", self.pretty[1]);
                println!("difference:            {}", self.pretty[2]);
                println!("max abs difference: {:e}", self.max_abs_difference);
            }
        }
    }
}

/// Mathematical failures still produce a document before exit code 1.
#[derive(Serialize)]
pub struct ErrorDoc {
    pub command: &'static str,
    pub kind: &'static str,
    pub error: String,
}

impl ErrorDoc {
    pub fn print(&self, format: OutputFormat) {
        match format {
            OutputFormat::Machine => emit(self),
            OutputFormat::Human => println!("{}: {}", self.kind, self.error),
        }
    }
}
