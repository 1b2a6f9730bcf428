use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::SeriesError;

/// One variable of a series ring.
///
/// `weight > 0` variables (t, x, y, z, s, h, ...) carry cohomological degree;
/// `weight < 0` variables are the ambient Lazard generators (b_i has weight -i).
/// `cap`, when present, is the largest exponent kept (used for nilpotent
/// classes like the hyperplane class h with h^(n+1) = 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub weight: i32,
    pub laurent_floor: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<i32>,
}

impl Variable {
    pub fn power(name: impl Into<String>, weight: i32) -> Self {
        Variable { name: name.into(), weight, laurent_floor: None, cap: None }
    }

    pub fn laurent(name: impl Into<String>, weight: i32, floor: i32) -> Self {
        Variable { name: name.into(), weight, laurent_floor: Some(floor), cap: None }
    }

    pub fn with_cap(mut self, cap: i32) -> Self {
        self.cap = Some(cap);
        self
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent_floor.is_some()
    }
}

/// Ordered list of uniquely named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VariableTable(Vec<Variable>);

impl VariableTable {
    pub fn new(vars: Vec<Variable>) -> Result<Self, SeriesError> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(SeriesError::DuplicateVariable(v.name.clone()));
            }
            if let Some(f) = v.laurent_floor {
                if f > 0 {
                    return Err(SeriesError::InvalidTable(format!(
                        "laurent floor of {} must be <= 0",
                        v.name
                    )));
                }
            }
        }
        Ok(VariableTable(vars))
    }

    pub fn vars(&self) -> &[Variable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A truncated graded series ring: a variable table plus truncation bounds.
///
/// Truncation keeps a term iff
/// * its plus-degree (weighted degree in positive-weight, non-Laurent
///   variables) is at most `trunc_plus`,
/// * its b-weight (sum of `-weight * exp` over negative-weight variables) is
///   at most `trunc_minus`,
/// * every capped variable is within its cap.
///
/// The first two are ideals, so truncated arithmetic is exact below them.
/// Laurent variables are not degree-truncated: in every computation of this
/// crate they are bounded by homogeneity together with the b-weight bound.
#[derive(Debug)]
pub struct SeriesRing {
    table: VariableTable,
    trunc_plus: i32,
    trunc_minus: i32,
    index: HashMap<String, usize>,
}

impl PartialEq for SeriesRing {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
            && self.trunc_plus == other.trunc_plus
            && self.trunc_minus == other.trunc_minus
    }
}

impl Eq for SeriesRing {}

impl SeriesRing {
    pub fn new(
        table: VariableTable,
        trunc_plus: i32,
        trunc_minus: i32,
    ) -> Result<Arc<Self>, SeriesError> {
        if trunc_plus < 0 || trunc_minus < 0 {
            return Err(SeriesError::InvalidTable("truncation bounds must be >= 0".into()));
        }
        let index = table
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.clone(), i))
            .collect();
        Ok(Arc::new(SeriesRing { table, trunc_plus, trunc_minus, index }))
    }

    pub fn from_vars(
        vars: Vec<Variable>,
        trunc_plus: i32,
        trunc_minus: i32,
    ) -> Result<Arc<Self>, SeriesError> {
        Self::new(VariableTable::new(vars)?, trunc_plus, trunc_minus)
    }

    pub fn table(&self) -> &VariableTable {
        &self.table
    }

    pub fn vars(&self) -> &[Variable] {
        self.table.vars()
    }

    pub fn nvars(&self) -> usize {
        self.table.len()
    }

    pub fn trunc_plus(&self) -> i32 {
        self.trunc_plus
    }

    pub fn trunc_minus(&self) -> i32 {
        self.trunc_minus
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize, SeriesError> {
        self.index_of(name).ok_or_else(|| SeriesError::UnknownVariable(name.to_string()))
    }

    pub fn var(&self, i: usize) -> &Variable {
        &self.vars()[i]
    }

    /// Builds a monomial, or `Ok(None)` if it lies beyond truncation.
    pub fn make_monomial(&self, exps: Box<[i32]>) -> Result<Option<Monomial>, SeriesError> {
        let mut order = 0;
        let mut plus = 0;
        let mut bweight = 0;
        for (v, &e) in self.vars().iter().zip(exps.iter()) {
            if v.weight > 0 {
                order += v.weight * e;
                if !v.is_laurent() {
                    plus += v.weight * e;
                }
            } else {
                bweight -= v.weight * e;
            }
        }
        if plus > self.trunc_plus || bweight > self.trunc_minus {
            return Ok(None);
        }
        for (v, &e) in self.vars().iter().zip(exps.iter()) {
            if let Some(c) = v.cap {
                if e > c {
                    return Ok(None);
                }
            }
        }
        for (v, &e) in self.vars().iter().zip(exps.iter()) {
            match v.laurent_floor {
                Some(f) if e < f => {
                    return Err(SeriesError::LaurentUnderflow { var: v.name.clone(), exp: e, floor: f })
                }
                None if e < 0 => {
                    return Err(SeriesError::NegativeExponent { var: v.name.clone(), exp: e })
                }
                _ => {}
            }
        }
        Ok(Some(Monomial { order, bweight, plus, exps }))
    }

    /// Fast path for products: exponents are the sum of two valid monomials.
    pub(crate) fn product_monomial(
        &self,
        a: &Monomial,
        b: &Monomial,
    ) -> Result<Option<Monomial>, SeriesError> {
        let plus = a.plus + b.plus;
        let bweight = a.bweight + b.bweight;
        if plus > self.trunc_plus || bweight > self.trunc_minus {
            return Ok(None);
        }
        let exps: Box<[i32]> = a.exps.iter().zip(b.exps.iter()).map(|(x, y)| x + y).collect();
        for (v, &e) in self.vars().iter().zip(exps.iter()) {
            if let Some(c) = v.cap {
                if e > c {
                    return Ok(None);
                }
            }
            if let Some(f) = v.laurent_floor {
                if e < f {
                    return Err(SeriesError::LaurentUnderflow { var: v.name.clone(), exp: e, floor: f });
                }
            }
        }
        Ok(Some(Monomial { order: a.order + b.order, bweight, plus, exps }))
    }

    /// Positive-weight variables (the "geometric" part of a monomial).
    pub fn is_positive(&self, i: usize) -> bool {
        self.var(i).weight > 0
    }
}

/// Exponent vector with cached gradings.
///
/// Canonical order: by `order` (weighted degree in positive-weight
/// variables), then by b-weight, then lexicographically with larger exponents
/// in earlier variables first. The order is multiplicative, and the first
/// term of a series is its lead.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub(crate) order: i32,
    pub(crate) bweight: i32,
    pub(crate) plus: i32,
    pub(crate) exps: Box<[i32]>,
}

impl Monomial {
    pub fn exps(&self) -> &[i32] {
        &self.exps
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn bweight(&self) -> i32 {
        self.bweight
    }

    pub fn plus_degree(&self) -> i32 {
        self.plus
    }

    pub fn exp(&self, i: usize) -> i32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then(self.bweight.cmp(&other.bweight))
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
