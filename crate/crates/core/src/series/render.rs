use std::fmt;

use super::{GradedSeries, Scalar, SeriesRing};

fn factor(name: &str, e: i32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

/// Space-separated factors, e.g. `b1 t^2`; `1` for the empty monomial.
pub(crate) fn monomial_string(ring: &SeriesRing, exps: &[i32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| factor(&ring.var(i).name, e))
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

/// Splits an exponent vector into (negative-weight part, the rest).
fn split_exps(ring: &SeriesRing, exps: &[i32]) -> (Vec<i32>, Vec<i32>) {
    let mut neg = vec![0; exps.len()];
    let mut pos = vec![0; exps.len()];
    for (i, &e) in exps.iter().enumerate() {
        if ring.var(i).weight < 0 {
            neg[i] = e;
        } else {
            pos[i] = e;
        }
    }
    (neg, pos)
}

fn joined(ring: &SeriesRing, exps: &[i32], sep: &str) -> String {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| factor(&ring.var(i).name, e))
        .collect::<Vec<_>>()
        .join(sep)
}

/// `|c|` followed by `body`, omitting a unit coefficient.
fn coeff_times(c: &Scalar, body: &str) -> String {
    let a = c.abs();
    if body.is_empty() {
        a.to_string()
    } else if a.is_one() {
        body.to_string()
    } else if a.is_integer() {
        format!("{a}{body}")
    } else {
        format!("{a} {body}")
    }
}

fn push_signed(out: &mut String, negative: bool, body: &str, sep: &str) {
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(sep);
        out.push(if negative { '-' } else { '+' });
        out.push_str(sep);
    }
    out.push_str(body);
}

/// Renders the coefficient polynomial in the negative-weight variables,
/// higher-index generators first, e.g. `6b2-4b1^2`.
fn render_poly(ring: &SeriesRing, mut terms: Vec<(Vec<i32>, Scalar)>, sep: &str) -> String {
    terms.sort_by(|(a, _), (b, _)| {
        let ra: Vec<i32> = a.iter().rev().copied().collect();
        let rb: Vec<i32> = b.iter().rev().copied().collect();
        rb.cmp(&ra)
    });
    let mut out = String::new();
    for (e, c) in &terms {
        let body = coeff_times(c, &joined(ring, e, ""));
        push_signed(&mut out, c.is_negative(), &body, sep);
    }
    out
}

/// Negative-weight exponents with their scalar.
type Coeff = (Vec<i32>, Scalar);

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ring = &self.ring;
        // Group by the positive part, in order of first appearance.
        let mut groups: Vec<(Vec<i32>, Vec<Coeff>)> = Vec::new();
        for (m, c) in self.terms() {
            let (neg, pos) = split_exps(ring, m.exps());
            match groups.iter_mut().find(|(p, _)| *p == pos) {
                Some((_, v)) => v.push((neg, c.clone())),
                None => groups.push((pos, vec![(neg, c.clone())])),
            }
        }
        let single = groups.len() == 1;
        let mut out = String::new();
        for (pos, coeffs) in groups {
            let pos_s = joined(ring, &pos, " ");
            if coeffs.len() == 1 {
                let (neg, c) = &coeffs[0];
                let neg_s = joined(ring, neg, "");
                let body = match (neg_s.is_empty(), pos_s.is_empty()) {
                    (true, _) => coeff_times(c, &pos_s),
                    (false, true) => coeff_times(c, &neg_s),
                    (false, false) => coeff_times(c, &format!("{neg_s} {pos_s}")),
                };
                push_signed(&mut out, c.is_negative(), &body, " ");
            } else if single && pos_s.is_empty() {
                out.push_str(&render_poly(ring, coeffs, " "));
            } else {
                let poly = render_poly(ring, coeffs, "");
                let body = if pos_s.is_empty() {
                    format!("({poly})")
                } else {
                    format!("({poly}) {pos_s}")
                };
                push_signed(&mut out, false, &body, " ");
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::series::Variable;

    fn ring() -> Arc<SeriesRing> {
        SeriesRing::from_vars(
            vec![
                Variable::laurent("t", 1, -8),
                Variable::power("b1", -1),
                Variable::power("b2", -2),
            ],
            8,
            8,
        )
        .unwrap()
    }

    fn s(r: &Arc<SeriesRing>, terms: &[(i32, i32, i32, i64)]) -> GradedSeries {
        GradedSeries::from_terms(
            r,
            terms.iter().map(|&(a, b, c, k)| (vec![a, b, c], Scalar::from_int(k))),
        )
        .unwrap()
    }

    #[test]
    fn grouped_rendering() {
        let r = ring();
        let f = s(&r, &[(1, 0, 0, 2), (2, 1, 0, 2), (3, 0, 1, 6), (3, 2, 0, -4)]);
        assert_eq!(f.to_string(), "2t + 2b1 t^2 + (6b2-4b1^2) t^3");
    }

    #[test]
    fn signs_and_units() {
        let r = ring();
        assert_eq!(s(&r, &[(0, 0, 0, 1), (1, 1, 0, -2)]).to_string(), "1 - 2b1 t");
        assert_eq!(s(&r, &[(-2, 0, 0, 1), (-1, 1, 0, 2)]).to_string(), "t^-2 + 2b1 t^-1");
        assert_eq!(s(&r, &[(0, 1, 0, -2)]).to_string(), "-2b1");
        assert_eq!(s(&r, &[(0, 2, 0, 6), (0, 0, 1, -3)]).to_string(), "-3b2 + 6b1^2");
        assert_eq!(GradedSeries::zero(&r).to_string(), "0");
        let half = GradedSeries::term(&r, Scalar::ratio(1, 2), &[("t", 1)]).unwrap();
        assert_eq!(half.to_string(), "1/2 t");
    }
}
