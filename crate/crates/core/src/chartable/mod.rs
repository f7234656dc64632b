//! Ordinary character tables by the Dixon–Schneider method.

mod dixon;
mod verify;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_integer::Integer;

pub use dixon::{class_structure_constants, dixon_prime, ModularTable, StructureConstants, MAX_CLASSES};

use crate::cyclo::Cyclotomic;
use crate::permgroup::{conjugacy_classes, ConjugacyClasses, PermGroup};
use crate::{Error, Result, DEFAULT_MAX_ORDER};

/// The irreducible characters of a group, one row per character and one
/// column per conjugacy class.
#[derive(Clone)]
pub struct CharacterTable {
    pub group: PermGroup,
    pub classes: ConjugacyClasses,
    pub exponent: u64,
    pub values: Vec<Vec<Cyclotomic>>,
    pub degrees: Vec<u64>,
    /// `power_classes[i][l]` is the class of `x_i^l` for `0 ≤ l < |x_i|`.
    pub power_classes: Vec<Vec<usize>>,
    pub structure_constants: StructureConstants,
    pub modular: ModularTable,
}

/// Builds the table of `group`, refusing groups above [`DEFAULT_MAX_ORDER`].
pub fn dixon_schneider(group: &PermGroup) -> Result<CharacterTable> {
    dixon_schneider_with_limit(group, DEFAULT_MAX_ORDER)
}

pub fn dixon_schneider_with_limit(group: &PermGroup, max_order: u64) -> Result<CharacterTable> {
    if group.order() > &max_order.into() {
        return Err(Error::capacity(
            "character_table",
            format!("|G| = {} exceeds the order limit {max_order}", group.order()),
        ));
    }
    let classes = conjugacy_classes(group)?;
    let exponent = classes.exponent();
    let constants = StructureConstants::compute(&classes)?;
    let modular = dixon::modular_table(&classes, &constants, exponent)?;
    let power_classes: Vec<Vec<usize>> = (0..classes.len())
        .map(|i| {
            let o = classes.element_orders[i] as i64;
            (0..o).map(|l| classes.power_class(i, l)).collect()
        })
        .collect();

    let mut rows = Vec::with_capacity(classes.len());
    for row in 0..classes.len() {
        let values = dixon::lift_row(&classes, &power_classes, &modular, exponent, row)?;
        reduction_check(&values, &modular, exponent, row)?;
        rows.push((row, values));
    }
    rows.sort_by(|(a, va), (b, vb)| {
        let trivial = |v: &[Cyclotomic]| v.iter().all(|x| *x == Cyclotomic::one());
        trivial(vb)
            .cmp(&trivial(va))
            .then(modular.degrees[*a].cmp(&modular.degrees[*b]))
            .then_with(|| compare_rows(va, vb))
    });
    let order: Vec<usize> = rows.iter().map(|(r, _)| *r).collect();
    let modular = ModularTable {
        prime: modular.prime,
        zeta: modular.zeta,
        degrees: order.iter().map(|&r| modular.degrees[r]).collect(),
        values: order.iter().map(|&r| modular.values[r].clone()).collect(),
    };
    let values: Vec<Vec<Cyclotomic>> = rows.into_iter().map(|(_, v)| v).collect();
    let degrees = modular.degrees.clone();
    Ok(CharacterTable {
        group: group.clone(),
        classes,
        exponent,
        values,
        degrees,
        power_classes,
        structure_constants: constants,
        modular,
    })
}

fn compare_rows(a: &[Cyclotomic], b: &[Cyclotomic]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.canonical_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// The lifted values, reduced back into `GF(q)`, must reproduce the residues.
fn reduction_check(values: &[Cyclotomic], modular: &ModularTable, exponent: u64, row: usize) -> Result<()> {
    let q = modular.prime;
    for (j, v) in values.iter().enumerate() {
        let zeta = crate::ffield::pow_mod(modular.zeta, exponent / v.order() as u64, q);
        if v.reduce_mod(q, zeta) != Some(modular.values[row][j]) {
            return Err(Error::internal(
                "dixon_schneider",
                format!("lifted value {v} does not reduce to its residue at class {j}"),
            ));
        }
    }
    Ok(())
}

/// A violated table invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableDefect {
    RowOrthogonality(usize, usize),
    ColumnOrthogonality(usize, usize),
    DegreeSum,
    TrivialRow,
    InverseClass(usize, usize),
    NonIntegral,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn group_order(&self) -> u64 {
        self.classes.group_order()
    }

    pub fn value(&self, chi: usize, class: usize) -> &Cyclotomic {
        &self.values[chi][class]
    }

    /// `χ(x)` for an arbitrary element `x` of the group.
    pub fn value_at(&self, chi: usize, x: &crate::permgroup::Permutation) -> Result<&Cyclotomic> {
        let c = self
            .classes
            .class_of(x)
            .ok_or_else(|| Error::input(format!("{x} is not in the group")))?;
        Ok(&self.values[chi][c])
    }

    pub fn is_real_character(&self, chi: usize) -> bool {
        self.values[chi].iter().all(Cyclotomic::is_real)
    }

    /// Index of the complex conjugate character.
    pub fn conjugate_character(&self, chi: usize) -> usize {
        let inv = &self.classes.inverse_map;
        (0..self.len())
            .find(|&psi| (0..self.classes.len()).all(|j| self.values[psi][j] == self.values[chi][inv[j]]))
            .expect("the conjugate of an irreducible character is irreducible")
    }

    /// Checks all table invariants exactly and returns the violations:
    /// orthogonality of rows and columns, the degree sum, the trivial row, and
    /// `χ(x⁻¹) = conj χ(x)` along the inverse map.
    pub fn verify(&self) -> Result<Vec<TableDefect>> {
        let mut defects = Vec::new();
        let order = self.group_order() as i128;

        let trivial_ok = self.values[0].iter().all(|v| *v == Cyclotomic::one());
        if !trivial_ok {
            defects.push(TableDefect::TrivialRow);
        }
        if self.degrees.iter().map(|&d| (d * d) as u128).sum::<u128>() != order as u128 {
            defects.push(TableDefect::DegreeSum);
        }
        for chi in 0..self.len() {
            if self.values[chi][0] != Cyclotomic::from_integer(self.degrees[chi] as i64) {
                defects.push(TableDefect::DegreeSum);
            }
        }

        defects.extend(verify::orthogonality(self));
        Ok(defects)
    }

    /// Stable text rendering: a header with class names, sizes and
    /// representative orders, then one row of values per character.
    pub fn dump(&self) -> String {
        let r = self.classes.len();
        let names = class_names(&self.classes.element_orders);
        let mut grid: Vec<Vec<String>> = Vec::with_capacity(self.len() + 3);
        let mut header = vec!["class".to_string()];
        header.extend(names);
        grid.push(header);
        let mut sizes = vec!["size".to_string()];
        sizes.extend(self.classes.sizes.iter().map(u64::to_string));
        grid.push(sizes);
        let mut orders = vec!["order".to_string()];
        orders.extend(self.classes.element_orders.iter().map(u64::to_string));
        grid.push(orders);
        for (i, row) in self.values.iter().enumerate() {
            let mut line = vec![format!("X.{}", i + 1)];
            line.extend(row.iter().map(|v| v.to_string()));
            grid.push(line);
        }
        let widths: Vec<usize> =
            (0..=r).map(|c| grid.iter().map(|row| row[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        let _ = writeln!(out, "order {}", self.group_order());
        let _ = writeln!(out, "classes {r}");
        let _ = writeln!(out, "exponent {}", self.exponent);
        for row in &grid {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                if c == 0 {
                    let _ = write!(line, "{cell:<w$}", w = widths[0]);
                } else {
                    let _ = write!(line, "  {cell:>w$}", w = widths[c]);
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Names of the form `4a`, `4b`, …: element order followed by the position
/// among classes of that order.
pub fn class_names(orders: &[u64]) -> Vec<String> {
    let mut seen = std::collections::HashMap::<u64, usize>::new();
    orders
        .iter()
        .map(|&o| {
            let n = seen.entry(o).or_insert(0);
            let mut idx = *n;
            *n += 1;
            let mut letters = Vec::new();
            loop {
                letters.push((b'a' + (idx % 26) as u8) as char);
                if idx < 26 {
                    break;
                }
                idx = idx / 26 - 1;
            }
            letters.reverse();
            format!("{o}{}", letters.into_iter().collect::<String>())
        })
        .collect()
}

/// Which characters and classes are real or rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealityProfile {
    pub real_character_indices: BTreeSet<usize>,
    pub real_class_indices: BTreeSet<usize>,
    pub rational_character_indices: BTreeSet<usize>,
    pub rational_class_indices: BTreeSet<usize>,
}

pub fn reality_profile(table: &CharacterTable) -> RealityProfile {
    let r = table.classes.len();
    let real_character_indices = (0..table.len()).filter(|&c| table.is_real_character(c)).collect();
    let real_class_indices = (0..r).filter(|&j| table.classes.inverse_map[j] == j).collect();
    let rational_character_indices = (0..table.len())
        .filter(|&c| table.values[c].iter().all(Cyclotomic::is_galois_fixed))
        .collect();
    let rational_class_indices = (0..r).filter(|&j| is_rational_class(table, j)).collect();
    RealityProfile {
        real_character_indices,
        real_class_indices,
        rational_character_indices,
        rational_class_indices,
    }
}

/// `x ~ x^k` for every `k` coprime to `|x|`, read off the power classes.
pub fn is_rational_class(table: &CharacterTable, j: usize) -> bool {
    let o = table.classes.element_orders[j] as usize;
    (1..o.max(2)).filter(|k| k.gcd(&o) == 1).all(|k| table.power_classes[j][k % o] == j)
}
