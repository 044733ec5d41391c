use serde::{Deserialize, Serialize};

use super::young::{enumerate_diagrams, young_projector, YoungDiagram};
use crate::error::{Error, Result};
use crate::numerics::{gram_schmidt, ComplexMatrix, TolerancePolicy, C64};

/// Largest tensor power the constructive builder supports.
pub const MAX_T: usize = 6;

/// One isotypic block of the Schur basis: `D_G x D_C` orthonormal vectors
/// `|k, m, λ>`, stored as `vectors[m - 1][λ - 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurSector {
    pub k: usize,
    pub diagram: YoungDiagram,
    pub d_g: usize,
    pub d_c: usize,
    vectors: Vec<Vec<ComplexMatrix>>,
}

impl SchurSector {
    pub fn new(k: usize, diagram: YoungDiagram, vectors: Vec<Vec<ComplexMatrix>>) -> Result<Self> {
        let d_g = vectors.len();
        let d_c = vectors.first().map_or(0, Vec::len);
        if d_g == 0 || d_c == 0 || vectors.iter().any(|row| row.len() != d_c) {
            return Err(Error::InvalidArgument(format!(
                "sector {k}: vector table must be a nonempty rectangle"
            )));
        }
        let dim = vectors[0][0].rows();
        if vectors.iter().flatten().any(|v| v.shape() != (dim, 1)) {
            return Err(Error::InvalidArgument(format!(
                "sector {k}: all vectors must be columns of length {dim}"
            )));
        }
        Ok(Self {
            k,
            diagram,
            d_g,
            d_c,
            vectors,
        })
    }

    /// Total dimension `D_G * D_C`.
    pub fn dim(&self) -> usize {
        self.d_g * self.d_c
    }

    /// `|k, m, λ>` with 1-based labels.
    pub fn vector(&self, m: usize, lambda: usize) -> Result<&ComplexMatrix> {
        check_label("m", m, self.d_g)?;
        check_label("lambda", lambda, self.d_c)?;
        Ok(&self.vectors[m - 1][lambda - 1])
    }

    pub fn vectors(&self) -> &[Vec<ComplexMatrix>] {
        &self.vectors
    }

    /// Vectors in `(m, λ)` row-major order.
    pub fn iter(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.vectors.iter().flatten()
    }

    /// Orthogonal projector onto the whole sector.
    pub fn projector(&self) -> ComplexMatrix {
        let dim = self.vectors[0][0].rows();
        let mut p = ComplexMatrix::zeros(dim, dim);
        for v in self.iter() {
            p.add_assign_scaled(&ComplexMatrix::outer(v, v), C64::new(1.0, 0.0));
        }
        p
    }
}

pub(crate) fn check_label(what: &'static str, index: usize, max: usize) -> Result<()> {
    if index == 0 || index > max {
        return Err(Error::IndexOutOfRange { what, index, max });
    }
    Ok(())
}

/// Labeled orthonormal basis of `(C^d)^{⊗t}` adapted to the collective action
/// `U^{⊗t}` and its commutant.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurBasis {
    pub d: usize,
    pub t: usize,
    sectors: Vec<SchurSector>,
}

impl SchurBasis {
    pub fn new(d: usize, t: usize, sectors: Vec<SchurSector>) -> Result<Self> {
        let dim = d.pow(t as u32);
        for s in &sectors {
            if s.vectors[0][0].rows() != dim {
                return Err(Error::DimensionMismatch {
                    expected: (dim, 1),
                    found: s.vectors[0][0].shape(),
                });
            }
        }
        Ok(Self { d, t, sectors })
    }

    /// Dimension `d^t` of the representation space.
    pub fn dim(&self) -> usize {
        self.d.pow(self.t as u32)
    }

    pub fn sectors(&self) -> &[SchurSector] {
        &self.sectors
    }

    /// Sector with 1-based label `k`.
    pub fn sector(&self, k: usize) -> Result<&SchurSector> {
        check_label("k", k, self.sectors.len())?;
        Ok(&self.sectors[k - 1])
    }

    /// `(D_G, D_C)` for each sector.
    pub fn dimension_table(&self) -> Vec<(usize, usize)> {
        self.sectors.iter().map(|s| (s.d_g, s.d_c)).collect()
    }

    /// The Schur transform: all basis vectors as columns, ordered by `(k, m, λ)`.
    pub fn transform_matrix(&self) -> ComplexMatrix {
        let cols: Vec<ComplexMatrix> = self
            .sectors
            .iter()
            .flat_map(|s| s.iter().cloned())
            .collect();
        ComplexMatrix::from_columns(&cols).expect("sector vectors share one length")
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&SchurBasisDoc::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SchurBasisDoc = serde_json::from_str(text)?;
        doc.try_into()
    }
}

/// Constructs the Schur basis for `U^{⊗t}` on `(C^2)^{⊗t}`.
///
/// For each two-row diagram `[t - j, j]` the Young symmetrizer of every
/// standard tableau is applied to the ket with `1` on the factors of the
/// second row. That yields one highest-weight vector per tableau (one per
/// multiplicity label λ). Column `m` is generated from these by `m - 1`
/// applications of the collective lowering operator, rescaled by the
/// λ-independent ladder norm, then orthonormalized with Gram-Schmidt. All
/// columns therefore share a Gram matrix and the same Gram-Schmidt
/// coefficients, which keeps the labels λ aligned across `m`.
///
/// The phase of each multiplicity copy is fixed by making the first nonzero
/// amplitude of `|k, 1, λ>` real positive.
pub fn build_schur_basis(d: usize, t: usize) -> Result<SchurBasis> {
    build_schur_basis_with(d, t, &TolerancePolicy::default())
}

pub fn build_schur_basis_with(d: usize, t: usize, policy: &TolerancePolicy) -> Result<SchurBasis> {
    let families = column_families(d, t)?;
    let mut sectors = Vec::with_capacity(families.len());
    for (idx, (diagram, columns)) in families.into_iter().enumerate() {
        let mut table: Vec<Vec<ComplexMatrix>> = Vec::with_capacity(columns.len());
        for family in &columns {
            table.push(gram_schmidt(family, policy)?);
        }
        // one phase per multiplicity copy, taken from the highest-weight column
        let phases: Vec<C64> = table[0].iter().map(first_amplitude_phase).collect();
        for row in table.iter_mut() {
            for (v, &ph) in row.iter_mut().zip(&phases) {
                *v = v.scale(ph);
            }
        }
        sectors.push(SchurSector::new(idx + 1, diagram, table)?);
    }
    SchurBasis::new(d, t, sectors)
}

fn first_amplitude_phase(v: &ComplexMatrix) -> C64 {
    v.entries()
        .iter()
        .find(|z| z.norm() > 1e-12)
        .map(|z| z.conj() / z.norm())
        .unwrap_or(C64::new(1.0, 0.0))
}

/// Pre-orthogonalization column families `e_{k,m,λ}` of every sector:
/// `families[k - 1] = (diagram, columns)` with `columns[m - 1][λ - 1]`.
pub fn column_families(d: usize, t: usize) -> Result<Vec<(YoungDiagram, Vec<Vec<ComplexMatrix>>)>> {
    if d != 2 || t == 0 || t > MAX_T {
        return Err(Error::Unsupported { d, t });
    }
    let dim = 1usize << t;
    let mut out = Vec::new();
    for diagram in enumerate_diagrams(t, d) {
        let j = diagram.row_lengths().get(1).copied().unwrap_or(0);
        let twice_spin = t - 2 * j;
        let d_g = twice_spin + 1;

        let mut highest = Vec::new();
        for tableau in diagram.standard_tableaux() {
            let y = young_projector(&diagram, &tableau, d)?;
            let ket_index = tableau.rows().get(1).map_or(0, |second| {
                second.iter().fold(0, |acc, &f| acc | 1 << (t - f))
            });
            let v = &y * &ComplexMatrix::basis_ket(dim, ket_index);
            let norm = v.frob_norm();
            if norm < 1e-12 {
                return Err(Error::InvalidTableau(format!(
                    "Young symmetrizer of {:?} annihilates its generating ket",
                    tableau.rows()
                )));
            }
            highest.push(v.scale_real(1.0 / norm));
        }

        let mut columns = vec![highest];
        for step in 0..twice_spin {
            // J_- |s, s - step> = sqrt((2s - step)(step + 1)) |s, s - step - 1>
            let ladder = (((twice_spin - step) * (step + 1)) as f64).sqrt();
            let next = columns[step]
                .iter()
                .map(|v| lower(v, t).scale_real(1.0 / ladder))
                .collect();
            columns.push(next);
        }
        debug_assert_eq!(columns.len(), d_g);
        out.push((diagram, columns));
    }
    Ok(out)
}

/// Collective lowering operator `sum_i σ_-^{(i)}` with `σ_-|0> = |1>`.
pub fn lower(v: &ComplexMatrix, t: usize) -> ComplexMatrix {
    let dim = 1usize << t;
    let mut out = vec![C64::new(0.0, 0.0); dim];
    for (idx, &amp) in v.entries().iter().enumerate() {
        if amp == C64::new(0.0, 0.0) {
            continue;
        }
        for q in 0..t {
            let bit = 1 << q;
            if idx & bit == 0 {
                out[idx | bit] += amp;
            }
        }
    }
    ComplexMatrix::column(&out)
}

/// The hand-written four-qubit basis: five symmetric states, the spin-1 and
/// spin-0 families orthonormalized within each column.
pub fn golden_basis_t4() -> SchurBasis {
    let policy = TolerancePolicy::default();
    let ket = |terms: &[(&str, f64)], scale: f64| {
        let mut v = vec![C64::new(0.0, 0.0); 16];
        for &(bits, c) in terms {
            v[usize::from_str_radix(bits, 2).expect("binary label")] += C64::new(c * scale, 0.0);
        }
        ComplexMatrix::column(&v)
    };
    let r6 = 1.0 / 6f64.sqrt();
    let r12 = 1.0 / 12f64.sqrt();

    let symmetric = vec![
        vec![ket(&[("0000", 1.0)], 1.0)],
        vec![ket(
            &[("1000", 1.0), ("0100", 1.0), ("0010", 1.0), ("0001", 1.0)],
            0.5,
        )],
        vec![ket(
            &[
                ("1100", 1.0),
                ("1010", 1.0),
                ("1001", 1.0),
                ("0110", 1.0),
                ("0101", 1.0),
                ("0011", 1.0),
            ],
            r6,
        )],
        vec![ket(
            &[("1110", 1.0), ("1101", 1.0), ("1011", 1.0), ("0111", 1.0)],
            0.5,
        )],
        vec![ket(&[("1111", 1.0)], 1.0)],
    ];

    let e = [
        [
            ket(&[("0001", 2.0), ("1000", -1.0), ("0010", -1.0)], r6),
            ket(&[("0010", 2.0), ("1000", -1.0), ("0001", -1.0)], r6),
            ket(&[("0100", 2.0), ("1000", -1.0), ("0001", -1.0)], r6),
        ],
        [
            ket(&[("1110", 2.0), ("0111", -1.0), ("1101", -1.0)], r6),
            ket(&[("1101", 2.0), ("0111", -1.0), ("1110", -1.0)], r6),
            ket(&[("1011", 2.0), ("0111", -1.0), ("1110", -1.0)], r6),
        ],
        [
            ket(
                &[
                    ("0101", 2.0),
                    ("1010", -2.0),
                    ("0011", 1.0),
                    ("1100", -1.0),
                    ("1001", 1.0),
                    ("0110", -1.0),
                ],
                r12,
            ),
            ket(
                &[
                    ("0110", 2.0),
                    ("1001", -2.0),
                    ("0011", 1.0),
                    ("1100", -1.0),
                    ("1010", 1.0),
                    ("0101", -1.0),
                ],
                r12,
            ),
            ket(
                &[
                    ("0110", 2.0),
                    ("1001", -2.0),
                    ("0101", 1.0),
                    ("1010", -1.0),
                    ("1100", 1.0),
                    ("0011", -1.0),
                ],
                r12,
            ),
        ],
    ];
    let spin_one: Vec<Vec<ComplexMatrix>> = e
        .iter()
        .map(|column| gram_schmidt(column, &policy).expect("independent column family"))
        .collect();

    let f = [
        ket(
            &[("1100", 1.0), ("0011", 1.0), ("1001", -1.0), ("0110", -1.0)],
            0.5,
        ),
        ket(
            &[("1010", 1.0), ("0101", 1.0), ("1001", -1.0), ("0110", -1.0)],
            0.5,
        ),
    ];
    let spin_zero = vec![gram_schmidt(&f, &policy).expect("independent singlet pair")];

    let diagram = |r: Vec<usize>| YoungDiagram::new(r).expect("valid diagram");
    let sectors = vec![
        SchurSector::new(1, diagram(vec![4]), symmetric),
        SchurSector::new(2, diagram(vec![3, 1]), spin_one),
        SchurSector::new(3, diagram(vec![2, 2]), spin_zero),
    ]
    .into_iter()
    .collect::<Result<Vec<_>>>()
    .expect("well-formed sectors");
    SchurBasis::new(2, 4, sectors).expect("four-qubit basis")
}

#[derive(Serialize, Deserialize)]
struct SchurBasisDoc {
    d: usize,
    t: usize,
    sectors: Vec<SectorDoc>,
}

#[derive(Serialize, Deserialize)]
struct SectorDoc {
    k: usize,
    #[serde(rename = "D_G")]
    d_g: usize,
    #[serde(rename = "D_C")]
    d_c: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    diagram: Option<Vec<usize>>,
    /// `(m, λ)` row-major; each vector is a list of `[re, im]` pairs.
    vectors: Vec<Vec<[f64; 2]>>,
}

impl From<&SchurBasis> for SchurBasisDoc {
    fn from(b: &SchurBasis) -> Self {
        Self {
            d: b.d,
            t: b.t,
            sectors: b
                .sectors
                .iter()
                .map(|s| SectorDoc {
                    k: s.k,
                    d_g: s.d_g,
                    d_c: s.d_c,
                    diagram: Some(s.diagram.row_lengths().to_vec()),
                    vectors: s
                        .iter()
                        .map(|v| v.entries().iter().map(|z| [z.re, z.im]).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<SchurBasisDoc> for SchurBasis {
    type Error = Error;

    fn try_from(doc: SchurBasisDoc) -> Result<Self> {
        let dim = doc.d.pow(doc.t as u32);
        let mut sectors = Vec::with_capacity(doc.sectors.len());
        for s in doc.sectors {
            if s.vectors.len() != s.d_g * s.d_c {
                return Err(Error::InvalidArgument(format!(
                    "sector {}: expected {} vectors, found {}",
                    s.k,
                    s.d_g * s.d_c,
                    s.vectors.len()
                )));
            }
            let diagram = match s.diagram {
                Some(rows) => YoungDiagram::new(rows)?,
                None => two_row_diagram(doc.t, s.d_g)?,
            };
            let mut flat = s.vectors.into_iter().map(|v| {
                ComplexMatrix::new(
                    dim,
                    1,
                    v.into_iter().map(|[re, im]| C64::new(re, im)).collect(),
                )
            });
            let mut table = Vec::with_capacity(s.d_g);
            for _ in 0..s.d_g {
                table.push((&mut flat).take(s.d_c).collect::<Result<Vec<_>>>()?);
            }
            sectors.push(SchurSector::new(s.k, diagram, table)?);
        }
        SchurBasis::new(doc.d, doc.t, sectors)
    }
}

fn two_row_diagram(t: usize, d_g: usize) -> Result<YoungDiagram> {
    if d_g == 0 || d_g > t + 1 || !(t + 1 - d_g).is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "no two-row diagram of size {t} has irrep dimension {d_g}"
        )));
    }
    let j = (t + 1 - d_g) / 2;
    YoungDiagram::new(if j == 0 { vec![t] } else { vec![t - j, j] })
}
