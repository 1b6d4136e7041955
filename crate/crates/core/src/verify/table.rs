use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functor::day_tensor_modules;
use crate::ring::RingSpec;
use crate::schur::{
    divided_module, exterior_module, frobenius_kernel_image, gamma_weight_module, is_isomorphic,
    symmetric_module, SchurAlgebra, SchurModule,
};

/// Composition-series names of the indecomposables of degree 2 over `F_2`.
pub const TABLE_NAMES: [&str; 5] = ["[α]", "[ω]", "[α/ω]", "[ω/α]", "[ω/α/ω]"];

/// Expected summands (indices into [`TABLE_NAMES`]) of each tensor product.
pub const GOLDEN: [[&[usize]; 5]; 5] = [
    [&[0], &[], &[0], &[], &[]],
    [&[], &[3], &[1], &[3], &[4]],
    [&[0], &[1], &[2], &[3], &[4]],
    [&[], &[3], &[3], &[3], &[4]],
    [&[], &[4], &[4], &[4], &[4, 4]],
];

/// The modules indexing the rows and columns, at `n = d`.
///
/// For `d = 2` over `F_2` these are `[α], [ω], [α/ω], [ω/α], [ω/α/ω]`; otherwise
/// `Γ^d, Λ^d, S^d, Γ^ω` (with `[α]` added in characteristic 2, degree 2).
pub fn table_family(ring: RingSpec, d: usize) -> Result<(Vec<String>, Vec<SchurModule>)> {
    let a = SchurAlgebra::new(ring, d, d);
    let omega = vec![1; d];
    if ring == RingSpec::PrimeField(2) && d == 2 {
        let mods = vec![
            frobenius_kernel_image(&a)?,
            exterior_module(&a, 2)?,
            divided_module(&a, 2)?,
            symmetric_module(&a, 2)?,
            gamma_weight_module(&a, &omega)?,
        ];
        return Ok((TABLE_NAMES.iter().map(|s| s.to_string()).collect(), mods));
    }
    let mods = vec![
        divided_module(&a, d)?,
        exterior_module(&a, d)?,
        symmetric_module(&a, d)?,
        gamma_weight_module(&a, &omega)?,
    ];
    let names = vec![format!("Γ^{d}"), format!("Λ^{d}"), format!("S^{d}"), "Γ^ω".to_string()];
    Ok((names, mods))
}

fn sum_of(alg: &Arc<SchurAlgebra>, family: &[SchurModule], idx: &[usize]) -> SchurModule {
    let parts: Vec<&SchurModule> = idx.iter().map(|&i| &family[i]).collect();
    SchurModule::direct_sum(alg, &parts)
}

fn matches(alg: &Arc<SchurAlgebra>, m: &SchurModule, family: &[SchurModule], idx: &[usize]) -> Result<bool> {
    let s = sum_of(alg, family, idx);
    if s.weight_dims() != m.weight_dims() {
        return Ok(false);
    }
    if s.rank() == 0 {
        return Ok(true);
    }
    Ok(is_isomorphic(&s, m)?.is_iso())
}

/// Writes `m` as a sum of at most two family members, if possible.
pub fn decompose(m: &SchurModule, family: &[SchurModule]) -> Result<Option<Vec<usize>>> {
    let alg = m.algebra();
    let mut candidates: Vec<Vec<usize>> = vec![vec![]];
    candidates.extend((0..family.len()).map(|i| vec![i]));
    for i in 0..family.len() {
        for j in i..family.len() {
            candidates.push(vec![i, j]);
        }
    }
    for c in candidates {
        if matches(alg, m, family, &c)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn render(names: &[String], idx: &[usize]) -> String {
    if idx.is_empty() {
        return "0".into();
    }
    idx.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(" ⊕ ")
}

#[derive(Clone, Debug, Serialize)]
pub struct TableCell {
    pub row: String,
    pub col: String,
    pub rank: usize,
    /// Identified summands, or `"Unknown"`.
    pub computed: String,
    pub expected: Option<String>,
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorTable {
    pub ring: String,
    pub d: usize,
    pub names: Vec<String>,
    pub cells: Vec<Vec<TableCell>>,
    /// Whether a golden table exists for this `(ring, d)`.
    pub golden: bool,
    pub pass: bool,
}

/// The table of tensor products of the family; against the golden table when
/// `ring = F_2, d = 2`, where the comparison is by isomorphism with the expected sum.
pub fn tensor_table(ring: RingSpec, d: usize) -> Result<TensorTable> {
    if d == 0 {
        return Err(Error::ShapeMismatch("degree must be positive".into()));
    }
    let (names, family) = table_family(ring, d)?;
    let alg = family[0].algebra().clone();
    let golden = ring == RingSpec::PrimeField(2) && d == 2;
    let mut cells = Vec::new();
    for (i, x) in family.iter().enumerate() {
        let mut row = Vec::new();
        for (j, y) in family.iter().enumerate() {
            let t = day_tensor_modules(x, y)?;
            let found = decompose(&t, &family)?;
            let computed = found.as_ref().map_or("Unknown".to_string(), |c| render(&names, c));
            let (expected, pass) = if golden {
                let e = GOLDEN[i][j];
                (Some(render(&names, e)), Some(matches(&alg, &t, &family, e)?))
            } else {
                (None, None)
            };
            row.push(TableCell { row: names[i].clone(), col: names[j].clone(), rank: t.rank(), computed, expected, pass });
        }
        cells.push(row);
    }
    let pass = cells.iter().flatten().all(|c| c.pass.unwrap_or(c.computed != "Unknown"));
    Ok(TensorTable { ring: ring.to_string(), d, names, cells, golden, pass })
}

impl TensorTable {
    pub fn to_markdown(&self) -> String {
        let mut s = format!("| ⊗ | {} |\n", self.names.join(" | "));
        s += &format!("|---|{}\n", "---|".repeat(self.names.len()));
        for row in &self.cells {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c.pass {
                    Some(false) => format!("{} (expected {})", c.computed, c.expected.as_deref().unwrap_or("?")),
                    _ => c.computed.clone(),
                })
                .collect();
            s += &format!("| {} | {} |\n", row[0].row, cells.join(" | "));
        }
        s
    }

    /// Cells that disagree with the golden table.
    pub fn mismatches(&self) -> Vec<&TableCell> {
        self.cells.iter().flatten().filter(|c| c.pass == Some(false)).collect()
    }
}
