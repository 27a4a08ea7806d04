//! Shannon entropies and signed mutual redundancy over empirical
//! categorical data, in bits.
//!
//! A [`ContingencyTable`] holds nonnegative real counts over the cells of n
//! categorical dimensions. Entropies are computed on normalized marginal
//! distributions with the convention `0 log 0 = 0`; no smoothing or
//! pseudo-counts are applied, since any smoothing would alter the signed
//! measure. The three- and four-dimensional mutual redundancies are the
//! alternating inclusion-exclusion sums of the subset entropies; they are
//! signed quantities, and negative values indicate uncertainty reduction.

use std::collections::BTreeMap;

use crate::{Error, Result};

/// One categorical dimension: a name and its alphabet size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimDescriptor {
    pub name: String,
    /// Alphabet size; at least 2. Category codes run `0..cardinality`.
    pub cardinality: usize,
}

impl DimDescriptor {
    pub fn new(name: impl Into<String>, cardinality: usize) -> Self {
        DimDescriptor {
            name: name.into(),
            cardinality,
        }
    }
}

/// Nonnegative real counts over the cells of n categorical dimensions.
///
/// Cells are keyed by coordinate tuples; missing cells count as zero. The
/// total count is strictly positive.
#[derive(Clone, Debug, PartialEq)]
pub struct ContingencyTable {
    dims: Vec<DimDescriptor>,
    cells: BTreeMap<Vec<u16>, f64>,
    total: f64,
}

impl ContingencyTable {
    /// Validates and assembles a table. Counts at the same cell accumulate.
    pub fn new(
        dims: Vec<DimDescriptor>,
        entries: impl IntoIterator<Item = (Vec<u16>, f64)>,
    ) -> Result<Self> {
        for d in &dims {
            if d.cardinality < 2 {
                return Err(Error::BadCardinality(d.cardinality));
            }
        }
        let mut cells: BTreeMap<Vec<u16>, f64> = BTreeMap::new();
        let mut total = 0.0;
        for (cell, count) in entries {
            if cell.len() != dims.len() {
                return Err(Error::CellArity {
                    got: cell.len(),
                    expected: dims.len(),
                    cell,
                });
            }
            for (dim, (&value, descriptor)) in cell.iter().zip(&dims).enumerate() {
                if value as usize >= descriptor.cardinality {
                    return Err(Error::CellOutOfRange {
                        dim,
                        value,
                        cardinality: descriptor.cardinality,
                        cell: cell.clone(),
                    });
                }
            }
            if count.is_nan() || count < 0.0 || count.is_infinite() {
                return Err(Error::NegativeCount { cell, count });
            }
            total += count;
            *cells.entry(cell).or_insert(0.0) += count;
        }
        if total <= 0.0 || total.is_nan() {
            return Err(Error::ZeroTotal);
        }
        Ok(ContingencyTable { dims, cells, total })
    }

    pub fn dims(&self) -> &[DimDescriptor] {
        &self.dims
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn cells(&self) -> impl Iterator<Item = (&[u16], f64)> {
        self.cells.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    fn check_subset(&self, subset: &[usize]) -> Result<Vec<usize>> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        for &idx in subset {
            if idx >= self.dims.len() {
                return Err(Error::DimIndexOutOfRange {
                    index: idx,
                    dims: self.dims.len(),
                });
            }
        }
        // canonical order makes the result independent of how the subset
        // was written
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateDims(subset.to_vec()));
        }
        Ok(sorted)
    }

    /// Shannon entropy in bits of the marginal distribution on `subset`.
    pub fn entropy(&self, subset: &[usize]) -> Result<f64> {
        let subset = self.check_subset(subset)?;
        let mut marginal: BTreeMap<Vec<u16>, f64> = BTreeMap::new();
        for (cell, count) in self.cells() {
            if count > 0.0 {
                let key: Vec<u16> = subset.iter().map(|&d| cell[d]).collect();
                *marginal.entry(key).or_insert(0.0) += count;
            }
        }
        let mut h = 0.0;
        for &mass in marginal.values() {
            if mass > 0.0 {
                let p = mass / self.total;
                h -= p * p.log2();
            }
        }
        Ok(h)
    }

    /// Mutual information `H_i + H_j - H_ij` in bits; nonnegative.
    pub fn mutual_information2(&self, dims: (usize, usize)) -> Result<f64> {
        let sorted = self.check_subset(&[dims.0, dims.1])?;
        let (i, j) = (sorted[0], sorted[1]);
        Ok(self.entropy(&[i])? + self.entropy(&[j])? - self.entropy(&[i, j])?)
    }

    /// Signed three-dimensional mutual redundancy in bits:
    /// `H_i + H_j + H_k - H_ij - H_ik - H_jk + H_ijk`.
    pub fn mutual_redundancy3(&self, dims: (usize, usize, usize)) -> Result<f64> {
        let sorted = self.check_subset(&[dims.0, dims.1, dims.2])?;
        let (i, j, k) = (sorted[0], sorted[1], sorted[2]);
        Ok(self.entropy(&[i])? + self.entropy(&[j])? + self.entropy(&[k])?
            - self.entropy(&[i, j])?
            - self.entropy(&[i, k])?
            - self.entropy(&[j, k])?
            + self.entropy(&[i, j, k])?)
    }

    /// Signed four-dimensional mutual redundancy in bits: the alternating
    /// inclusion-exclusion sum singles - pairs + triples - quadruple.
    pub fn mutual_redundancy4(&self, dims: (usize, usize, usize, usize)) -> Result<f64> {
        let sorted = self.check_subset(&[dims.0, dims.1, dims.2, dims.3])?;
        let (i, j, k, l) = (sorted[0], sorted[1], sorted[2], sorted[3]);
        let singles =
            self.entropy(&[i])? + self.entropy(&[j])? + self.entropy(&[k])? + self.entropy(&[l])?;
        let pairs = self.entropy(&[i, j])?
            + self.entropy(&[i, k])?
            + self.entropy(&[i, l])?
            + self.entropy(&[j, k])?
            + self.entropy(&[j, l])?
            + self.entropy(&[k, l])?;
        let triples = self.entropy(&[i, j, k])?
            + self.entropy(&[i, j, l])?
            + self.entropy(&[i, k, l])?
            + self.entropy(&[j, k, l])?;
        Ok(singles - pairs + triples - self.entropy(&[i, j, k, l])?)
    }

    /// Signed redundancy (or mutual information) for a subset of 2, 3, or 4
    /// dimensions.
    pub fn redundancy_for_subset(&self, subset: &[usize]) -> Result<f64> {
        match *subset {
            [i, j] => self.mutual_information2((i, j)),
            [i, j, k] => self.mutual_redundancy3((i, j, k)),
            [i, j, k, l] => self.mutual_redundancy4((i, j, k, l)),
            _ => Err(Error::UnsupportedSubsetSize(subset.len())),
        }
    }

    /// Display label for a subset: the dimension names concatenated.
    pub fn subset_label(&self, subset: &[usize]) -> Result<String> {
        self.check_subset(subset)?;
        Ok(subset.iter().map(|&d| self.dims[d].name.as_str()).collect())
    }
}

/// Yearly redundancy values for a list of dimension subsets.
///
/// All value sequences share the `years` axis: `values[s][y]` is the signed
/// redundancy of subset `s` in year `years[y]`, in bits.
#[derive(Clone, Debug, PartialEq)]
pub struct RedundancySeries {
    pub labels: Vec<String>,
    pub years: Vec<i32>,
    pub values: Vec<Vec<f64>>,
}

/// Computes one redundancy value per (subset, year) over year-keyed tables.
///
/// Tables must be sorted by strictly increasing year and share the
/// dimension-name schema.
pub fn series(
    tables: &[(i32, ContingencyTable)],
    subsets: &[Vec<usize>],
) -> Result<RedundancySeries> {
    if tables.is_empty() {
        return Err(Error::NoTables);
    }
    if tables.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::UnsortedYears);
    }
    let schema: Vec<&str> = tables[0].1.dims().iter().map(|d| d.name.as_str()).collect();
    for (year, table) in tables {
        let names: Vec<&str> = table.dims().iter().map(|d| d.name.as_str()).collect();
        if names != schema {
            return Err(Error::SchemaMismatch(format!(
                "year {year} has dimensions {names:?}, expected {schema:?}"
            )));
        }
    }

    let labels = subsets
        .iter()
        .map(|s| tables[0].1.subset_label(s))
        .collect::<Result<Vec<_>>>()?;
    let years: Vec<i32> = tables.iter().map(|(y, _)| *y).collect();
    let mut values = vec![Vec::with_capacity(tables.len()); subsets.len()];
    for (_, table) in tables {
        for (s, subset) in subsets.iter().enumerate() {
            values[s].push(table.redundancy_for_subset(subset)?);
        }
    }
    Ok(RedundancySeries {
        labels,
        years,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binary_dims(names: &[&str]) -> Vec<DimDescriptor> {
        names.iter().map(|n| DimDescriptor::new(*n, 2)).collect()
    }

    /// All eight cells of a 2x2x2 table, counts in cell order
    /// (0,0,0), (0,0,1), ..., (1,1,1).
    fn cube(counts: [f64; 8]) -> ContingencyTable {
        let entries = (0..8).map(|idx| {
            (
                vec![(idx >> 2) as u16 & 1, (idx >> 1) as u16 & 1, idx as u16 & 1],
                counts[idx],
            )
        });
        ContingencyTable::new(binary_dims(&["u", "i", "g"]), entries).unwrap()
    }

    fn xor_table() -> ContingencyTable {
        // Z = X xor Y, (X, Y) uniform
        cube([1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0])
    }

    fn copy_table() -> ContingencyTable {
        cube([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0])
    }

    #[test]
    fn entropy_uniform_binary() {
        let t = ContingencyTable::new(
            binary_dims(&["x"]),
            [(vec![0], 1.0), (vec![1], 1.0)],
        )
        .unwrap();
        assert_eq!(t.entropy(&[0]).unwrap(), 1.0);
    }

    #[test]
    fn entropy_deterministic_dimension() {
        let t = ContingencyTable::new(binary_dims(&["x"]), [(vec![0], 5.0)]).unwrap();
        assert_eq!(t.entropy(&[0]).unwrap(), 0.0);
    }

    #[test]
    fn entropy_additive_under_independence() {
        let t = ContingencyTable::new(
            binary_dims(&["x", "y"]),
            [
                (vec![0, 0], 1.0),
                (vec![0, 1], 1.0),
                (vec![1, 0], 1.0),
                (vec![1, 1], 1.0),
            ],
        )
        .unwrap();
        assert_eq!(t.entropy(&[0, 1]).unwrap(), 2.0);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            ContingencyTable::new(vec![DimDescriptor::new("x", 1)], [(vec![0], 1.0)]),
            Err(Error::BadCardinality(1))
        ));
        assert!(matches!(
            ContingencyTable::new(binary_dims(&["x"]), [(vec![2], 1.0)]),
            Err(Error::CellOutOfRange { .. })
        ));
        assert!(matches!(
            ContingencyTable::new(binary_dims(&["x"]), [(vec![0, 1], 1.0)]),
            Err(Error::CellArity { .. })
        ));
        assert!(matches!(
            ContingencyTable::new(binary_dims(&["x"]), [(vec![0], -1.0)]),
            Err(Error::NegativeCount { .. })
        ));
        assert!(matches!(
            ContingencyTable::new(binary_dims(&["x"]), [(vec![0], 0.0)]),
            Err(Error::ZeroTotal)
        ));
        let t = xor_table();
        assert!(matches!(t.entropy(&[]), Err(Error::EmptySubset)));
        assert!(matches!(
            t.entropy(&[7]),
            Err(Error::DimIndexOutOfRange { .. })
        ));
        assert!(matches!(
            t.entropy(&[0, 0]),
            Err(Error::DuplicateDims(_))
        ));
    }

    #[test]
    fn redundancy3_xor_is_minus_one_bit() {
        assert_eq!(xor_table().mutual_redundancy3((0, 1, 2)).unwrap(), -1.0);
    }

    #[test]
    fn redundancy3_copy_is_plus_one_bit() {
        assert_eq!(copy_table().mutual_redundancy3((0, 1, 2)).unwrap(), 1.0);
    }

    #[test]
    fn redundancy3_independent_is_zero() {
        assert_eq!(cube([1.0; 8]).mutual_redundancy3((0, 1, 2)).unwrap(), 0.0);
    }

    #[test]
    fn redundancy4_independent_is_zero() {
        let dims = binary_dims(&["u", "i", "g", "f"]);
        let entries = (0..16).map(|idx: u16| {
            (
                vec![(idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1],
                1.0,
            )
        });
        let t = ContingencyTable::new(dims, entries).unwrap();
        assert_eq!(t.mutual_redundancy4((0, 1, 2, 3)).unwrap(), 0.0);
    }

    #[test]
    fn redundancy4_with_constant_dimension_vanishes() {
        // A deterministic fourth dimension contributes zero to every
        // entropy term, and the alternating coefficients then cancel the
        // remaining terms pairwise: the four-dimensional redundancy is 0,
        // whatever the three-way structure underneath.
        let dims = binary_dims(&["u", "i", "g", "f"]);
        let cells: Vec<(Vec<u16>, f64)> = xor_table()
            .cells()
            .map(|(cell, count)| {
                let mut extended = cell.to_vec();
                extended.push(0);
                (extended, count)
            })
            .collect();
        let t = ContingencyTable::new(dims, cells).unwrap();
        assert_eq!(t.mutual_redundancy4((0, 1, 2, 3)).unwrap(), 0.0);
        assert_eq!(t.mutual_redundancy3((0, 1, 2)).unwrap(), -1.0);
    }

    #[test]
    fn redundancy4_perfect_quadruple_copy() {
        let dims = binary_dims(&["u", "i", "g", "f"]);
        let t = ContingencyTable::new(
            dims,
            [(vec![0, 0, 0, 0], 1.0), (vec![1, 1, 1, 1], 1.0)],
        )
        .unwrap();
        assert_eq!(t.mutual_redundancy4((0, 1, 2, 3)).unwrap(), 1.0);
    }

    #[test]
    fn mutual_information_copy_and_independent() {
        let copy = ContingencyTable::new(
            binary_dims(&["x", "y"]),
            [(vec![0, 0], 1.0), (vec![1, 1], 1.0)],
        )
        .unwrap();
        assert_eq!(copy.mutual_information2((0, 1)).unwrap(), 1.0);

        let indep = ContingencyTable::new(
            binary_dims(&["x", "y"]),
            (0..4).map(|i: u16| (vec![i >> 1, i & 1], 1.0)),
        )
        .unwrap();
        assert_eq!(indep.mutual_information2((0, 1)).unwrap(), 0.0);
    }

    #[test]
    fn mutual_information_noisy_copy() {
        // Y = X with probability 0.75, else flipped
        let t = ContingencyTable::new(
            binary_dims(&["x", "y"]),
            [
                (vec![0, 0], 3.0),
                (vec![0, 1], 1.0),
                (vec![1, 0], 1.0),
                (vec![1, 1], 3.0),
            ],
        )
        .unwrap();
        let mi = t.mutual_information2((0, 1)).unwrap();
        assert!((mi - 0.188_721_875_540_867_17).abs() <= 1e-12);
    }

    #[test]
    fn series_single_year_and_constant_series() {
        let tables = vec![(1980, xor_table())];
        let out = series(&tables, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(out.labels, vec!["uig".to_string()]);
        assert_eq!(out.years, vec![1980]);
        assert_eq!(out.values, vec![vec![-1.0]]);

        let tables: Vec<(i32, ContingencyTable)> =
            (1980..1990).map(|y| (y, copy_table())).collect();
        let out = series(&tables, &[vec![0, 1, 2]]).unwrap();
        assert!(out.values[0].iter().all(|&v| v == 1.0));
    }

    #[test]
    fn series_matches_brute_force_on_year_varying_mixture() {
        // 25 years of XOR tables mixed with uniform noise at a
        // year-varying weight; every value must equal the per-year
        // brute-force recomputation
        let mut tables = Vec::new();
        let mut expected = Vec::new();
        for j in 0..25i32 {
            let w = 0.2 + 0.6 * (f64::from(j) / 24.0);
            let mut counts = [0.0; 8];
            for (idx, slot) in counts.iter_mut().enumerate() {
                let (x, y, z) = (idx >> 2 & 1, idx >> 1 & 1, idx & 1);
                let xor = if z == (x ^ y) { 1.0 } else { 0.0 };
                *slot = w * xor / 4.0 + (1.0 - w) / 8.0;
            }
            tables.push((1980 + j, cube(counts)));
            expected.push(brute_force_r3(counts));
        }
        let out = series(&tables, &[vec![0, 1, 2]]).unwrap();
        for (got, want) in out.values[0].iter().zip(&expected) {
            assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn series_schema_and_order_validation() {
        let other = ContingencyTable::new(
            binary_dims(&["a", "b", "c"]),
            [(vec![0, 0, 0], 1.0)],
        )
        .unwrap();
        let mismatch = vec![(1980, xor_table()), (1981, other)];
        assert!(matches!(
            series(&mismatch, &[vec![0, 1, 2]]),
            Err(Error::SchemaMismatch(_))
        ));
        let unsorted = vec![(1981, xor_table()), (1980, xor_table())];
        assert!(matches!(
            series(&unsorted, &[vec![0, 1, 2]]),
            Err(Error::UnsortedYears)
        ));
        assert!(matches!(series(&[], &[vec![0, 1, 2]]), Err(Error::NoTables)));
    }

    /// Independent reimplementation for 2x2x2 tables: explicit marginal
    /// accumulation over the eight cells.
    fn brute_force_r3(counts: [f64; 8]) -> f64 {
        let total: f64 = counts.iter().sum();
        let h = |masses: &[f64]| -> f64 {
            masses
                .iter()
                .filter(|&&m| m > 0.0)
                .map(|&m| {
                    let p = m / total;
                    -p * p.log2()
                })
                .sum()
        };
        let at = |x: usize, y: usize, z: usize| counts[(x << 2) | (y << 1) | z];
        let mut hx = [0.0; 2];
        let mut hy = [0.0; 2];
        let mut hz = [0.0; 2];
        let mut hxy = [0.0; 4];
        let mut hxz = [0.0; 4];
        let mut hyz = [0.0; 4];
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    let c = at(x, y, z);
                    hx[x] += c;
                    hy[y] += c;
                    hz[z] += c;
                    hxy[(x << 1) | y] += c;
                    hxz[(x << 1) | z] += c;
                    hyz[(y << 1) | z] += c;
                }
            }
        }
        h(&hx) + h(&hy) + h(&hz) - h(&hxy) - h(&hxz) - h(&hyz) + h(&counts)
    }

    proptest! {
        #[test]
        fn redundancy3_matches_brute_force(counts in proptest::array::uniform8(0.0..10.0f64)) {
            prop_assume!(counts.iter().sum::<f64>() > 0.0);
            let table = cube(counts);
            let got = table.mutual_redundancy3((0, 1, 2)).unwrap();
            let expected = brute_force_r3(counts);
            prop_assert!((got - expected).abs() <= 1e-12);
        }

        #[test]
        fn scaling_counts_changes_nothing(
            counts in proptest::array::uniform8(0.0..10.0f64),
            scale in 0.1..100.0f64,
        ) {
            prop_assume!(counts.iter().sum::<f64>() > 0.0);
            let base = cube(counts);
            let mut scaled_counts = counts;
            for c in &mut scaled_counts {
                *c *= scale;
            }
            let scaled = cube(scaled_counts);
            let h0 = base.entropy(&[0, 1, 2]).unwrap();
            let h1 = scaled.entropy(&[0, 1, 2]).unwrap();
            prop_assert!((h0 - h1).abs() <= 1e-12);
            let r0 = base.mutual_redundancy3((0, 1, 2)).unwrap();
            let r1 = scaled.mutual_redundancy3((0, 1, 2)).unwrap();
            prop_assert!((r0 - r1).abs() <= 1e-12);
        }

        #[test]
        fn subset_order_is_irrelevant(counts in proptest::array::uniform8(0.0..10.0f64)) {
            prop_assume!(counts.iter().sum::<f64>() > 0.0);
            let t = cube(counts);
            prop_assert_eq!(
                t.entropy(&[0, 2]).unwrap(),
                t.entropy(&[2, 0]).unwrap()
            );
            prop_assert_eq!(
                t.mutual_redundancy3((0, 1, 2)).unwrap(),
                t.mutual_redundancy3((2, 0, 1)).unwrap()
            );
        }

        #[test]
        fn mutual_information_is_nonnegative(counts in proptest::array::uniform8(0.0..10.0f64)) {
            prop_assume!(counts.iter().sum::<f64>() > 0.0);
            let t = cube(counts);
            prop_assert!(t.mutual_information2((0, 1)).unwrap() >= -1e-12);
        }

        #[test]
        fn zero_count_slice_changes_nothing(counts in proptest::array::uniform8(0.1..10.0f64)) {
            let base = cube(counts);
            // same cells, but the third dimension widened to cardinality 3
            let dims = vec![
                DimDescriptor::new("u", 2),
                DimDescriptor::new("i", 2),
                DimDescriptor::new("g", 3),
            ];
            let widened = ContingencyTable::new(
                dims,
                base.cells().map(|(cell, count)| (cell.to_vec(), count)),
            )
            .unwrap();
            prop_assert_eq!(
                base.mutual_redundancy3((0, 1, 2)).unwrap(),
                widened.mutual_redundancy3((0, 1, 2)).unwrap()
            );
            prop_assert_eq!(
                base.entropy(&[1, 2]).unwrap(),
                widened.entropy(&[1, 2]).unwrap()
            );
        }
    }
}
