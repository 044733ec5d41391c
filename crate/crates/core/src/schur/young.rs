//! Young diagrams, standard tableaux and Young symmetrizers acting on
//! `(C^d)^{⊗t}` by permutation of tensor factors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, C64};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YoungDiagram {
    row_lengths: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(row_lengths: Vec<usize>) -> Result<Self> {
        if row_lengths.is_empty() || row_lengths.contains(&0) {
            return Err(Error::InvalidTableau(format!(
                "row lengths {row_lengths:?} must be nonempty and positive"
            )));
        }
        if row_lengths.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidTableau(format!(
                "row lengths {row_lengths:?} must be weakly decreasing"
            )));
        }
        Ok(Self { row_lengths })
    }

    pub fn row_lengths(&self) -> &[usize] {
        &self.row_lengths
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.row_lengths.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.row_lengths.len()
    }

    /// Length of column `c` (0-based).
    pub fn column_length(&self, c: usize) -> usize {
        self.row_lengths.iter().filter(|&&r| r > c).count()
    }

    /// Product of hook lengths; `t! / hook_product` standard tableaux exist.
    pub fn hook_product(&self) -> u64 {
        let mut prod = 1u64;
        for (r, &len) in self.row_lengths.iter().enumerate() {
            for c in 0..len {
                let arm = len - c - 1;
                let leg = self.column_length(c) - r - 1;
                prod *= (arm + leg + 1) as u64;
            }
        }
        prod
    }

    /// Dimension of the associated `U(d)` irrep (hook-content formula).
    pub fn unitary_irrep_dim(&self, d: usize) -> u64 {
        let mut num = 1u64;
        for (r, &len) in self.row_lengths.iter().enumerate() {
            for c in 0..len {
                let content = d as i64 + c as i64 - r as i64;
                if content <= 0 {
                    return 0;
                }
                num *= content as u64;
            }
        }
        num / self.hook_product()
    }

    /// Every standard filling with `1..=t`, in lexicographic order of the
    /// row-concatenated reading word.
    pub fn standard_tableaux(&self) -> Vec<Tableau> {
        let mut out = Vec::new();
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); self.num_rows()];
        self.fill(1, &mut rows, &mut out);
        out.sort_by_key(|a| a.reading_word());
        out
    }

    fn fill(&self, next: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
        if next > self.size() {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for r in 0..rows.len() {
            let c = rows[r].len();
            let fits_row = c < self.row_lengths[r];
            let fits_col = r == 0 || rows[r - 1].len() > c;
            if fits_row && fits_col {
                rows[r].push(next);
                self.fill(next + 1, rows, out);
                rows[r].pop();
            }
        }
    }
}

/// Filling of a Young diagram with `1..=t`; entry `i` names tensor factor `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// Validates that `rows` is a standard filling.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let diagram = YoungDiagram::new(rows.iter().map(Vec::len).collect())?;
        let mut seen: Vec<usize> = rows.iter().flatten().copied().collect();
        seen.sort_unstable();
        if seen != (1..=diagram.size()).collect::<Vec<_>>() {
            return Err(Error::InvalidTableau(format!(
                "entries of {rows:?} must be exactly 1..={}",
                diagram.size()
            )));
        }
        let t = Self { rows };
        if !t.is_standard() {
            return Err(Error::InvalidTableau(format!(
                "{:?} is not standard",
                t.rows
            )));
        }
        Ok(t)
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn diagram(&self) -> YoungDiagram {
        YoungDiagram {
            row_lengths: self.rows.iter().map(Vec::len).collect(),
        }
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|c| self.rows.iter().filter_map(|r| r.get(c).copied()).collect())
            .collect()
    }

    fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self
            .columns()
            .iter()
            .all(|c| c.windows(2).all(|w| w[0] < w[1]));
        rows_ok && cols_ok
    }
}

/// All partitions of `t` into at most `d` parts, lexicographically decreasing.
pub fn enumerate_diagrams(t: usize, d: usize) -> Vec<YoungDiagram> {
    fn go(
        remaining: usize,
        max_part: usize,
        parts_left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<YoungDiagram>,
    ) {
        if remaining == 0 {
            out.push(YoungDiagram {
                row_lengths: cur.clone(),
            });
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            cur.push(p);
            go(remaining - p, p, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if t >= 1 && d >= 1 {
        go(t, t, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Index of the computational basis state after moving the content of tensor
/// factor `i` to factor `perm[i]` (0-based, factor 0 most significant).
fn permute_index(index: usize, perm: &[usize], d: usize) -> usize {
    let t = perm.len();
    let mut digits = vec![0usize; t];
    let mut rest = index;
    for pos in (0..t).rev() {
        digits[pos] = rest % d;
        rest /= d;
    }
    let mut moved = vec![0usize; t];
    for (i, &target) in perm.iter().enumerate() {
        moved[target] = digits[i];
    }
    moved.iter().fold(0, |acc, &x| acc * d + x)
}

/// Permutations of `t` factors that only shuffle within the given blocks,
/// with their signs.
fn block_permutations(blocks: &[Vec<usize>], t: usize) -> Vec<(Vec<usize>, i32)> {
    let mut perms = vec![((0..t).collect::<Vec<_>>(), 1)];
    for block in blocks {
        let idx: Vec<usize> = block.iter().map(|&e| e - 1).collect();
        let mut next = Vec::new();
        for local in heap_permutations(idx.len()) {
            let sign = permutation_sign(&local);
            for (base, base_sign) in &perms {
                let mut p = base.clone();
                for (a, &b) in local.iter().enumerate() {
                    p[idx[a]] = base[idx[b]];
                }
                next.push((p, base_sign * sign));
            }
        }
        perms = next;
    }
    perms
}

fn heap_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            go(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut (0..n).collect(), &mut out);
    out
}

fn permutation_sign(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn signed_permutation_sum(
    blocks: &[Vec<usize>],
    t: usize,
    d: usize,
    signed: bool,
) -> ComplexMatrix {
    let dim = d.pow(t as u32);
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (perm, sign) in block_permutations(blocks, t) {
        let s = if signed { sign as f64 } else { 1.0 };
        for col in 0..dim {
            let row = permute_index(col, &perm, d);
            let v = m.get(row, col) + C64::new(s, 0.0);
            m.set(row, col, v);
        }
    }
    m
}

/// Unnormalized Young symmetrizer `R_T C_T` of a standard tableau on
/// `(C^d)^{⊗t}`: the column antisymmetrizer acts first, then the row
/// symmetrizer. Satisfies `Y^2 = (hook product) Y`.
pub fn young_projector(
    diagram: &YoungDiagram,
    tableau: &Tableau,
    d: usize,
) -> Result<ComplexMatrix> {
    if &tableau.diagram() != diagram {
        return Err(Error::InvalidTableau(format!(
            "tableau {:?} does not have shape {:?}",
            tableau.rows(),
            diagram.row_lengths()
        )));
    }
    if !tableau.is_standard() {
        return Err(Error::InvalidTableau(format!(
            "{:?} is not standard",
            tableau.rows()
        )));
    }
    let t = diagram.size();
    let rows = signed_permutation_sum(tableau.rows(), t, d, false);
    let cols = signed_permutation_sum(&tableau.columns(), t, d, true);
    Ok(&rows * &cols)
}
