//! Module-category data over Rep of the Kac–Paljutkin algebra: the maps ψ_g
//! (g ∈ K₄) and ψ_ρ, their unitarity, the coherence diagrams against the
//! solutions R, R̄, and a phase-repair search for the printed ψ_ρ.
//!
//! Conventions. ψ_g : H_ρ⊗H_{ρg} → H_{1/2}⊗H_g is stored as a 2×2 matrix whose
//! row j is the image of ξ_j⊗ξ_{ρg} in the basis e_k⊗ξ_g. ψ_ρ is stored as a
//! 4×4 matrix whose column g is the image of ξ_g⊗ξ_{gρ} in the basis
//! (e₁⊗ξ₁, e₁⊗ξ₂, e₂⊗ξ₁, e₂⊗ξ₂). A_g is column g reshaped to 2×2, A_g[i][j]
//! being the coefficient of e_i⊗ξ_j.

use serde::Serialize;

use crate::cyclotomic::CycQ8;
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Source {
    Printed,
    Repaired,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleData {
    pub psi_g: [Matrix; 4],
    pub psi_rho: Matrix,
}

fn q(n: i64) -> CycQ8 {
    CycQ8::from_int(n)
}

fn m2(a: CycQ8, b: CycQ8, c: CycQ8, d: CycQ8) -> Matrix {
    Matrix::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2")
}

/// The printed maps: ψ_e, ψ_a, ψ_b, ψ_c and ψ_ρ.
pub fn printed_module_data() -> ModuleData {
    let r = CycQ8::inv_sqrt2();
    let psi_e = m2(q(0), q(1), q(1), q(0));
    let psi_a = m2(r.clone(), -r.clone(), r.clone(), r.clone());
    let psi_b = m2(q(1), q(0), q(0), q(-1));
    let psi_c = m2(r.clone(), r.clone(), -r.clone(), r.clone());
    let s2 = CycQ8::sqrt2();
    let rows = [[q(0), q(1), s2.clone(), q(1)], [s2.clone(), q(1), q(0), q(-1)], [s2.clone(), q(-1), q(0), q(1)], [q(0), q(1), s2, q(1)]];
    let half = CycQ8::frac(1, 2);
    let psi_rho = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|x| x * &half).collect()).collect()).expect("4x4");
    ModuleData { psi_g: [psi_e, psi_a, psi_b, psi_c], psi_rho }
}

pub fn build_module_data(source: Source) -> ModuleData {
    match source {
        Source::Printed => printed_module_data(),
        Source::Repaired => {
            let printed = printed_module_data();
            sign_repair_search(&printed).map(|r| r.repaired).unwrap_or(printed)
        }
    }
}

impl ModuleData {
    pub fn a(&self, g: usize) -> Matrix {
        Matrix::from_rows((0..2).map(|i| (0..2).map(|j| self.psi_rho.get(2 * i + j, g).clone()).collect()).collect()).expect("2x2")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagramResult {
    pub name: String,
    pub holds: bool,
    /// Intermediate vectors, rendered.
    pub steps: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleReport {
    /// Unitarity of ψ_e, ψ_a, ψ_b, ψ_c, ψ_ρ.
    pub unitary: [bool; 5],
    /// First failing inner product of ψ_ρ columns, if any.
    pub unitarity_witness: Option<String>,
    pub g_diagrams: Vec<DiagramResult>,
    pub rho_diagram: DiagramResult,
    pub norms_consistent: bool,
}

impl ModuleReport {
    pub fn all_unitary(&self) -> bool {
        self.unitary.iter().all(|&u| u)
    }

    pub fn diagrams_hold(&self) -> bool {
        self.g_diagrams.iter().all(|d| d.holds) && self.rho_diagram.holds
    }

    pub fn passed(&self) -> bool {
        self.all_unitary() && self.diagrams_hold() && self.norms_consistent
    }
}

const G_NAMES: [&str; 4] = ["e", "a", "b", "c"];

fn render(terms: &[(CycQ8, String)]) -> String {
    let parts: Vec<String> = terms.iter().filter(|(c, _)| !c.is_zero()).map(|(c, b)| format!("({c}) {b}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// The H_g diagram: (id⊗ψ_g)(ψ_ρ⊗id)(id⊗R̄)(ξ_g) against (R⊗id)(ξ_g) = (e₁⊗e₁ + e₂⊗e₂)⊗ξ_g.
pub fn g_diagram(m: &ModuleData, g: usize) -> DiagramResult {
    let gn = G_NAMES[g];
    let s2 = CycQ8::sqrt2();
    let a = m.a(g);
    let step1 = format!("({s2}) ξ_{gn}⊗ξ_{{{gn}ρ}}⊗ξ_{{ρ{gn}}}");
    let mut step2 = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            step2.push((&s2 * a.get(i, j), format!("e{}⊗ξ{}⊗ξ_{{ρ{gn}}}", i + 1, j + 1)));
        }
    }
    // step 3: coefficient of e_i⊗e_k⊗ξ_g is √2 Σ_j A_g[i][j] Ψ_g[j][k].
    let prod = a.mul(&m.psi_g[g]).expect("2x2").scale(&s2);
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..2 {
        for k in 0..2 {
            let b = format!("e{}⊗e{}⊗ξ_{gn}", i + 1, k + 1);
            lhs.push((prod.get(i, k).clone(), b.clone()));
            rhs.push((if i == k { CycQ8::one() } else { CycQ8::zero() }, b));
        }
    }
    DiagramResult {
        name: format!("H_{gn}"),
        holds: prod == Matrix::identity(2),
        steps: vec![step1, render(&step2)],
        lhs: render(&lhs),
        rhs: render(&rhs),
    }
}

/// The H_ρ diagram: (id⊗ψ_ρ)(ψ_g⊗id)(id⊗R̄) against R⊗id on H_ρ, with
/// R̄ = (1/√2) Σ_g ξ_{ρg}⊗ξ_{gρ}. The coefficient of e_i⊗e_k⊗ξ_l in the image
/// of ξ_j is (1/√2) Σ_g Ψ_g[j][i] A_g[k][l]; it must be δ_ik δ_lj.
pub fn rho_diagram(m: &ModuleData) -> DiagramResult {
    let r = CycQ8::inv_sqrt2();
    let mut holds = true;
    let mut first_bad = None;
    for j in 0..2 {
        for i in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let mut acc = CycQ8::zero();
                    for g in 0..4 {
                        acc += &(m.psi_g[g].get(j, i) * m.a(g).get(k, l));
                    }
                    let acc = &acc * &r;
                    let want = if i == k && l == j { CycQ8::one() } else { CycQ8::zero() };
                    if acc != want {
                        holds = false;
                        first_bad.get_or_insert((j, i, k, l, acc, want));
                    }
                }
            }
        }
    }
    let (lhs, rhs) = match first_bad {
        Some((j, i, k, l, got, want)) => (
            format!("ξ{} ↦ ({got}) e{}⊗e{}⊗ξ{} + ...", j + 1, i + 1, k + 1, l + 1),
            format!("ξ{} ↦ ({want}) e{}⊗e{}⊗ξ{} + ...", j + 1, i + 1, k + 1, l + 1),
        ),
        None => ("ξ_j ↦ (e₁⊗e₁ + e₂⊗e₂)⊗ξ_j".into(), "ξ_j ↦ (e₁⊗e₁ + e₂⊗e₂)⊗ξ_j".into()),
    };
    DiagramResult { name: "H_ρ".into(), holds, steps: vec![], lhs, rhs }
}

pub fn verify_module_diagrams(m: &ModuleData) -> ModuleReport {
    let mut unitary = [false; 5];
    for g in 0..4 {
        unitary[g] = m.psi_g[g].is_unitary();
    }
    unitary[4] = m.psi_rho.is_unitary();
    let mut unitarity_witness = None;
    let gram = m.psi_rho.adjoint().mul(&m.psi_rho).expect("4x4");
    'outer: for x in 0..4 {
        for y in 0..4 {
            let want = if x == y { CycQ8::one() } else { CycQ8::zero() };
            if gram.get(x, y) != &want {
                unitarity_witness = Some(format!("⟨ψ_ρ column {}, column {}⟩ = {}", G_NAMES[x], G_NAMES[y], gram.get(x, y)));
                break 'outer;
            }
        }
    }
    let g_diagrams = (0..4).map(|g| g_diagram(m, g)).collect();
    // ‖√2 ξ_{gρ}⊗ξ_{ρg}‖² and ‖(1/√2) Σ_g ξ_{ρg}⊗ξ_{gρ}‖² are both 2.
    let two = CycQ8::from_int(2);
    let norm_g = &CycQ8::sqrt2() * &CycQ8::sqrt2();
    let norm_rho = (0..4).fold(CycQ8::zero(), |acc, _| &acc + &CycQ8::frac(1, 2));
    ModuleReport {
        unitary,
        unitarity_witness,
        g_diagrams,
        rho_diagram: rho_diagram(m),
        norms_consistent: norm_g == two && norm_rho == two,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RepairSolution {
    /// Phase exponent k (phase i^k) on each ψ_g.
    pub global: [u8; 4],
    /// Phase exponents on the entries of ψ_ρ, row-major; zero entries keep 0.
    pub entries: [[u8; 4]; 4],
    pub changes: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RepairResult {
    pub solutions: Vec<RepairSolution>,
    pub minimal: RepairSolution,
    pub repaired: ModuleData,
    pub log: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RepairError {
    #[error("no phase assignment makes every check pass")]
    NoneFound,
}

fn phase(k: u8) -> CycQ8 {
    CycQ8::zeta_pow(2 * k as i64)
}

fn apply(m: &ModuleData, s: &RepairSolution) -> ModuleData {
    let mut out = m.clone();
    for g in 0..4 {
        out.psi_g[g] = m.psi_g[g].scale(&phase(s.global[g]));
        for r in 0..4 {
            let v = m.psi_rho.get(r, g) * &phase(s.entries[r][g]);
            out.psi_rho.set(r, g, v);
        }
    }
    out
}

/// Exhaustive search over fourth-root-of-unity phases: one global phase per
/// ψ_g and one per nonzero entry of ψ_ρ. Each column g is filtered by its H_g
/// diagram, then the surviving combinations are tested for unitarity and the
/// H_ρ diagram. The minimal solution changes the fewest phases.
pub fn sign_repair_search(m: &ModuleData) -> Result<RepairResult, RepairError> {
    let mut per_column: Vec<Vec<(u8, [u8; 4])>> = Vec::new();
    let mut log = Vec::new();
    for g in 0..4 {
        let nz: Vec<usize> = (0..4).filter(|&r| !m.psi_rho.get(r, g).is_zero()).collect();
        let mut ok = Vec::new();
        for gp in 0..4u8 {
            for code in 0..4usize.pow(nz.len() as u32) {
                let mut ph = [0u8; 4];
                let mut c = code;
                for &r in &nz {
                    ph[r] = (c % 4) as u8;
                    c /= 4;
                }
                let mut trial = m.clone();
                trial.psi_g[g] = m.psi_g[g].scale(&phase(gp));
                for r in 0..4 {
                    trial.psi_rho.set(r, g, m.psi_rho.get(r, g) * &phase(ph[r]));
                }
                if g_diagram(&trial, g).holds {
                    ok.push((gp, ph));
                }
            }
        }
        log.push(format!("column {}: {} phase choices pass the H_{} diagram", G_NAMES[g], ok.len(), G_NAMES[g]));
        per_column.push(ok);
    }
    let mut solutions = Vec::new();
    let total: usize = per_column.iter().map(Vec::len).product();
    for idx in 0..total {
        let mut rem = idx;
        let mut sol = RepairSolution { global: [0; 4], entries: [[0; 4]; 4], changes: 0 };
        for (g, col) in per_column.iter().enumerate() {
            let (gp, ph) = col[rem % col.len()];
            rem /= col.len();
            sol.global[g] = gp;
            for r in 0..4 {
                sol.entries[r][g] = ph[r];
            }
        }
        let trial = apply(m, &sol);
        if trial.psi_rho.is_unitary() && trial.psi_g.iter().all(Matrix::is_unitary) && rho_diagram(&trial).holds {
            sol.changes = sol.global.iter().filter(|&&k| k != 0).count()
                + sol.entries.iter().flatten().filter(|&&k| k != 0).count();
            solutions.push(sol);
        }
    }
    log.push(format!("{} combinations tried, {} pass every check", total, solutions.len()));
    let minimal = solutions.iter().min_by_key(|s| (s.changes, s.global, s.entries)).cloned().ok_or(RepairError::NoneFound)?;
    for g in 0..4 {
        for r in 0..4 {
            if minimal.entries[r][g] != 0 {
                log.push(format!(
                    "minimal repair: entry (row {r}, column {}) of ψ_ρ multiplied by i^{}",
                    G_NAMES[g], minimal.entries[r][g]
                ));
            }
        }
        if minimal.global[g] != 0 {
            log.push(format!("minimal repair: ψ_{} multiplied by i^{}", G_NAMES[g], minimal.global[g]));
        }
    }
    let repaired = apply(m, &minimal);
    Ok(RepairResult { solutions, minimal, repaired, log })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_psi_rho_not_unitary() {
        let r = verify_module_diagrams(&printed_module_data());
        assert!(!r.unitary[4]);
        assert!(r.unitary[..4].iter().all(|&u| u));
        assert!(r.unitarity_witness.unwrap().contains("column a, column b"));
    }

    #[test]
    fn repair_flips_one_sign() {
        let res = sign_repair_search(&printed_module_data()).unwrap();
        assert_eq!(res.minimal.changes, 1);
        assert_eq!(res.minimal.entries[3][2], 2);
        let rep = verify_module_diagrams(&res.repaired);
        assert!(rep.passed());
        assert_eq!(rep.g_diagrams[2].lhs, rep.g_diagrams[2].rhs);
    }
}
