use std::collections::BTreeMap;

use super::exterior::ExteriorVector;
use super::symplectic::SpToken;
use super::weights::Weight;
use crate::specht::{standard_tableaux, Diagram2, Tableau2};
use crate::{Error, Result};

/// Which rule of the tableau table applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TableauRule {
    Relabel01,
    Relabel10,
    AddColumn,
    HeightOne,
    DoubleColumn,
    SplitColumns,
    TopPaired,
    BottomPaired,
    LongRoot,
    OutOfCube,
}

impl TableauRule {
    pub const ALL: [TableauRule; 10] = [
        TableauRule::Relabel01,
        TableauRule::Relabel10,
        TableauRule::AddColumn,
        TableauRule::HeightOne,
        TableauRule::DoubleColumn,
        TableauRule::SplitColumns,
        TableauRule::TopPaired,
        TableauRule::BottomPaired,
        TableauRule::LongRoot,
        TableauRule::OutOfCube,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableauRule::Relabel01 => "relabel-01",
            TableauRule::Relabel10 => "relabel-10",
            TableauRule::AddColumn => "add-column",
            TableauRule::HeightOne => "height-one",
            TableauRule::DoubleColumn => "double-column",
            TableauRule::SplitColumns => "split-columns",
            TableauRule::TopPaired => "top-paired",
            TableauRule::BottomPaired => "bottom-paired",
            TableauRule::LongRoot => "long-root",
            TableauRule::OutOfCube => "zero",
        }
    }
}

/// `coeff · e_s` in `W(target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleImage {
    pub case: TableauRule,
    pub coeff: i64,
    pub tableau: Option<Tableau2>,
    pub target: Weight,
}

impl RuleImage {
    pub fn vector(&self) -> Result<ExteriorVector> {
        match &self.tableau {
            Some(s) if self.coeff != 0 => Ok(tableau_vector(&self.target, s)?.scale(self.coeff)),
            _ => Ok(ExteriorVector::zero(self.target.genus())),
        }
    }
}

/// `Υ_λ(e_t)` for a tableau with entries in `N(λ)`.
pub fn tableau_vector(lambda: &Weight, t: &Tableau2) -> Result<ExteriorVector> {
    let labels = lambda.zero_set();
    if t.entries() != labels {
        return Err(Error::Precondition(format!("tableau {t} is not filled by N({lambda}) = {labels:?}")));
    }
    lambda.upsilon(&t.polytabloid_on(&labels))
}

enum Slot {
    Top(usize),
    Bottom(usize),
    Single(usize),
}

fn locate(t: &Tableau2, x: usize) -> Slot {
    let b = t.bottom.len();
    if let Some(k) = t.bottom.iter().position(|&y| y == x) {
        return Slot::Bottom(k);
    }
    let k = t.top.iter().position(|&y| y == x).expect("label present");
    if k < b {
        Slot::Top(k)
    } else {
        Slot::Single(k)
    }
}

fn flip(t: &mut Tableau2, col: usize) -> i64 {
    std::mem::swap(&mut t.top[col], &mut t.bottom[col]);
    -1
}

fn remove_column(t: &mut Tableau2, col: usize) -> (usize, usize) {
    (t.top.remove(col), t.bottom.remove(col))
}

fn relabel(t: &Tableau2, from: usize, to: usize) -> Tableau2 {
    let f = |x: &usize| if *x == from { to } else { *x };
    Tableau2 { top: t.top.iter().map(f).collect(), bottom: t.bottom.iter().map(f).collect() }
}

/// The tabulated image of `e_t` under `e_{α_i}`, after normalising by column flips.
pub fn tableau_rule(lambda: &Weight, i: usize, t: &Tableau2) -> Result<RuleImage> {
    let g = lambda.genus();
    if i == 0 || i > g {
        return Err(Error::OutOfRange(format!("root index {i} outside 1..={g}")));
    }
    if t.entries() != lambda.zero_set() {
        return Err(Error::Precondition(format!("tableau {t} is not filled by N({lambda})")));
    }
    let shifted = lambda.shift_by_root(i);
    let zero = |case| RuleImage { case, coeff: 0, tableau: None, target: lambda.clone() };
    if !Weight::in_cube(&shifted) {
        return Ok(zero(TableauRule::OutOfCube));
    }
    let target = Weight(shifted);
    let image = |case, coeff, s: Tableau2| Ok(RuleImage { case, coeff, tableau: Some(s), target: target.clone() });
    if i == g {
        return image(TableauRule::LongRoot, 1, t.clone());
    }
    match (lambda.0[i - 1], lambda.0[i]) {
        (0, 1) => image(TableauRule::Relabel01, 1, relabel(t, i, i + 1)),
        (-1, 0) => image(TableauRule::Relabel10, -1, relabel(t, i + 1, i)),
        (-1, 1) => {
            let mut s = t.clone();
            let b = s.bottom.len();
            s.top.insert(b, i);
            s.bottom.push(i + 1);
            image(TableauRule::AddColumn, 1, s)
        }
        (0, 0) => {
            let mut s = t.clone();
            let mut sign = 1;
            match (locate(t, i), locate(t, i + 1)) {
                (Slot::Single(_), Slot::Single(_)) => Ok(RuleImage { coeff: 0, ..image(TableauRule::HeightOne, 0, s)? }),
                (Slot::Top(c), Slot::Bottom(d)) | (Slot::Bottom(d), Slot::Top(c)) if c == d => {
                    if s.top[c] != i {
                        sign *= flip(&mut s, c);
                    }
                    remove_column(&mut s, c);
                    image(TableauRule::DoubleColumn, 2 * sign, s)
                }
                (Slot::Top(c) | Slot::Bottom(c), Slot::Top(d) | Slot::Bottom(d)) => {
                    if s.bottom[c] != i {
                        sign *= flip(&mut s, c);
                    }
                    if s.bottom[d] != i + 1 {
                        sign *= flip(&mut s, d);
                    }
                    let (hi, lo) = (c.max(d), c.min(d));
                    let (x_hi, _) = remove_column(&mut s, hi);
                    let (x_lo, _) = remove_column(&mut s, lo);
                    let (k, l) = if c < d { (x_lo, x_hi) } else { (x_hi, x_lo) };
                    let b = s.bottom.len();
                    s.top.insert(b, k);
                    s.bottom.push(l);
                    image(TableauRule::SplitColumns, sign, s)
                }
                (Slot::Top(c) | Slot::Bottom(c), Slot::Single(e)) => {
                    if s.top[c] != i {
                        sign *= flip(&mut s, c);
                    }
                    let k = s.bottom[c];
                    s.top[e] = k;
                    remove_column(&mut s, c);
                    image(TableauRule::TopPaired, sign, s)
                }
                (Slot::Single(e), Slot::Top(c) | Slot::Bottom(c)) => {
                    if s.bottom[c] != i + 1 {
                        sign *= flip(&mut s, c);
                    }
                    let k = s.top[c];
                    s.top[e] = k;
                    remove_column(&mut s, c);
                    image(TableauRule::BottomPaired, sign, s)
                }
            }
        }
        _ => Ok(zero(TableauRule::OutOfCube)),
    }
}

/// Tableaux on `N(λ)` of shape `{j}`: standard ones and all their column flips.
pub fn tableaux_with_flips(lambda: &Weight, j: usize) -> Result<Vec<Tableau2>> {
    let labels = lambda.zero_set();
    let d = Diagram2::from_weight(labels.len(), j)?;
    let mut out = Vec::new();
    for t in standard_tableaux(d) {
        let t = Tableau2 {
            top: t.top.iter().map(|&x| labels[x - 1]).collect(),
            bottom: t.bottom.iter().map(|&x| labels[x - 1]).collect(),
        };
        for f in 0u32..1 << d.b {
            let mut s = t.clone();
            for c in 0..d.b {
                if f >> c & 1 == 1 {
                    flip(&mut s, c);
                }
            }
            out.push(s);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct TableauRuleReport {
    pub checked: BTreeMap<TableauRule, usize>,
    pub failures: Vec<String>,
}

impl TableauRuleReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// Every rule from the table was exercised at least once.
    pub fn all_cases_seen(&self) -> bool {
        TableauRule::ALL.iter().all(|c| self.checked.contains_key(c))
    }
}

/// Compares the table with the direct action of `e_{α_i}` for all weights, labels `j`
/// and tableaux (with column flips) in genus `g`.
pub fn tableau_rules_check(g: usize) -> Result<TableauRuleReport> {
    let mut report = TableauRuleReport::default();
    for j in 1..=g + 1 {
        for lambda in Weight::lefschetz_weights(g, j) {
            for t in tableaux_with_flips(&lambda, j)? {
                let v = tableau_vector(&lambda, &t)?;
                for i in 1..=g {
                    let rule = tableau_rule(&lambda, i, &t)?;
                    let direct = SpToken::LieE(i).apply(&v)?;
                    *report.checked.entry(rule.case).or_default() += 1;
                    if direct != rule.vector()? {
                        report.failures.push(format!(
                            "g={g} j={j} λ={lambda} i={i} t={t} rule {}",
                            rule.case.name()
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules_match_direct_action() {
        for g in 1..=4 {
            let r = tableau_rules_check(g).unwrap();
            assert!(r.ok(), "{:?}", &r.failures[..r.failures.len().min(5)]);
            if g == 4 {
                assert!(r.all_cases_seen(), "{:?}", r.checked);
            }
        }
    }

    #[test]
    fn coefficients_of_named_instances() {
        let t = Tableau2::new(vec![1], vec![]).unwrap();
        let r = tableau_rule(&Weight(vec![0, 1]), 1, &t).unwrap();
        assert_eq!((r.coeff, r.tableau.unwrap().top), (1, vec![2]));
        let t = Tableau2::new(vec![2], vec![]).unwrap();
        assert_eq!(tableau_rule(&Weight(vec![-1, 0]), 1, &t).unwrap().coeff, -1);
        let t = Tableau2::new(vec![1], vec![2]).unwrap();
        let r = tableau_rule(&Weight(vec![0, 0]), 1, &t).unwrap();
        assert_eq!((r.case, r.coeff), (TableauRule::DoubleColumn, 2));
    }
}
