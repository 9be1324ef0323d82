//! Quadratic algebra relations with involution, checked on a monomial basis.
//!
//! Each relation is stored as a single word expression whose value should be the
//! zero operator. Words act right to left and the third generator is applied as
//! the commutator `K1 K2 - K2 K1` by double application.

use std::fmt;

use num_traits::{One, Zero};

use super::{DunklOperator, OperatorSpec};
use crate::error::Result;
use crate::exactnum::{int, rat, LaurentPoly, Rational};
use crate::families::{ChiharaParams, YParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    K1,
    K2,
    K3,
    P,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::K1 => "K1",
            Generator::K2 => "K2",
            Generator::K3 => "K3",
            Generator::P => "P",
        })
    }
}

/// Linear combination of words in the generators; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordExpr {
    pub terms: Vec<(Rational, Vec<Generator>)>,
}

impl WordExpr {
    pub fn word(c: Rational, w: &[Generator]) -> Self {
        WordExpr {
            terms: vec![(c, w.to_vec())],
        }
    }

    pub fn plus(mut self, c: Rational, w: &[Generator]) -> Self {
        self.terms.push((c, w.to_vec()));
        self
    }

    /// `[a, b] = ab - ba`
    pub fn commutator(a: Generator, b: Generator) -> Self {
        Self::word(int(1), &[a, b]).plus(int(-1), &[b, a])
    }

    /// `{a, b} = ab + ba`
    pub fn anticommutator(a: Generator, b: Generator) -> Self {
        Self::word(int(1), &[a, b]).plus(int(1), &[b, a])
    }
}

/// The two generators realized as operators, with `K2 = x`.
struct Realization {
    k1: DunklOperator,
    p: DunklOperator,
}

impl Realization {
    fn apply_gen(&self, g: Generator, f: &LaurentPoly) -> Result<LaurentPoly> {
        match g {
            Generator::K1 => self.k1.apply(f),
            Generator::K2 => Ok(&LaurentPoly::x() * f),
            Generator::K3 => {
                let a = self.k1.apply(&(&LaurentPoly::x() * f))?;
                let b = &LaurentPoly::x() * &self.k1.apply(f)?;
                Ok(&a - &b)
            }
            Generator::P => self.p.apply(f),
        }
    }

    fn apply_expr(&self, e: &WordExpr, f: &LaurentPoly) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (c, word) in &e.terms {
            let mut g = f.clone();
            for gen in word.iter().rev() {
                g = self.apply_gen(*gen, &g)?;
            }
            out = &out + &g.scale(c);
        }
        Ok(out)
    }
}

/// Constants in the two non-trivial relations of the `Y`-family algebra:
///
/// `[K2,K3] = (2eps-1) K2² P - 2gamma K3 P + p_const P + 1/2`
/// `[K3,K1] = (1-2eps) K3 P + eps(eps-1) K2 + gp_const P`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YStructureConstants {
    pub p_const: Rational,
    pub gp_const: Rational,
}

impl YStructureConstants {
    pub fn new(params: &YParams, eps: &Rational) -> Self {
        let g = &params.gamma;
        let g2 = g * g;
        YStructureConstants {
            p_const: &g2 - eps * &g2 * int(2) + &params.mu,
            gp_const: -(g * eps * (eps - int(1))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraFamily {
    Chihara {
        params: ChiharaParams,
        eps: Rational,
    },
    Y {
        params: YParams,
        eps: Rational,
        constants: YStructureConstants,
    },
}

impl AlgebraFamily {
    pub fn y(params: YParams, eps: Rational) -> Self {
        let constants = YStructureConstants::new(&params, &eps);
        AlgebraFamily::Y {
            params,
            eps,
            constants,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            AlgebraFamily::Chihara { .. } => "chihara",
            AlgebraFamily::Y { .. } => "y",
        }
    }
}

/// Residuals of one relation on `x^0 .. x^D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraRelationReport {
    pub relation: String,
    pub degree_cap: usize,
    pub residuals: Vec<LaurentPoly>,
    pub constants: Vec<(&'static str, Rational)>,
}

impl AlgebraRelationReport {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(LaurentPoly::is_zero)
    }

    /// Largest absolute coefficient over all residuals.
    pub fn max_residual(&self) -> Rational {
        self.residuals
            .iter()
            .map(LaurentPoly::max_abs_coeff)
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

fn involution_relations(delta3: &Rational) -> Vec<(&'static str, WordExpr)> {
    use Generator::*;
    vec![
        ("[K1,P]=0", WordExpr::commutator(K1, P)),
        (
            "{K2,P}=2*d3",
            WordExpr::anticommutator(K2, P).plus(-(delta3 * int(2)), &[]),
        ),
        ("{K3,P}=0", WordExpr::anticommutator(K3, P)),
        ("P^2=I", WordExpr::word(int(1), &[P, P]).plus(int(-1), &[])),
    ]
}

/// Checks every relation of the chosen algebra on monomials up to degree `degree_cap`.
pub fn verify_algebra(
    family: &AlgebraFamily,
    degree_cap: usize,
) -> Result<Vec<AlgebraRelationReport>> {
    use Generator::*;
    let half = rat(1, 2);
    let (k1_spec, gamma, relations, constants) = match family {
        AlgebraFamily::Chihara { params, eps } => {
            let (a, b, g) = (&params.alpha, &params.beta, &params.gamma);
            let d1 = eps * (a + b + int(1) - eps);
            let d2 = a + b + rat(3, 2) - eps * int(2);
            let d3 = g.clone();
            let d4 = (g * g + int(1)) / int(2);
            let d5 = g * g * &d2 + a + &half;
            let mut rels = vec![
                (
                    "[K3,K2]=K2^2/2+d2*K2^2P+2d3*K3P-d5*P-d4",
                    WordExpr::commutator(K3, K2)
                        .plus(-half.clone(), &[K2, K2])
                        .plus(-d2.clone(), &[K2, K2, P])
                        .plus(-(&d3 * int(2)), &[K3, P])
                        .plus(d5.clone(), &[P])
                        .plus(d4.clone(), &[]),
                ),
                (
                    "[K1,K3]={K1,K2}/2-d2*K3P-d3*K1P+d1*K2-d1*d3*P",
                    WordExpr::commutator(K1, K3)
                        .plus(-half.clone(), &[K1, K2])
                        .plus(-half.clone(), &[K2, K1])
                        .plus(d2.clone(), &[K3, P])
                        .plus(d3.clone(), &[K1, P])
                        .plus(-d1.clone(), &[K2])
                        .plus(&d1 * &d3, &[P]),
                ),
            ];
            rels.extend(involution_relations(&d3));
            let constants = vec![("d1", d1), ("d2", d2), ("d3", d3), ("d4", d4), ("d5", d5)];
            let spec = OperatorSpec::ChiharaD {
                params: params.clone(),
                eps: eps.clone(),
            };
            (spec, g.clone(), rels, constants)
        }
        AlgebraFamily::Y {
            params,
            eps,
            constants: c,
        } => {
            let g = &params.gamma;
            let two_eps = eps * int(2);
            let ee = eps * (eps - int(1));
            let mut rels = vec![
                (
                    "[K2,K3]=(2e-1)K2^2P-2g*K3P+c_p*P+1/2",
                    WordExpr::commutator(K2, K3)
                        .plus(-(&two_eps - int(1)), &[K2, K2, P])
                        .plus(g * int(2), &[K3, P])
                        .plus(-c.p_const.clone(), &[P])
                        .plus(-half.clone(), &[]),
                ),
                (
                    "[K3,K1]=(1-2e)K3P+e(e-1)K2+c_gp*P",
                    WordExpr::commutator(K3, K1)
                        .plus(-(int(1) - &two_eps), &[K3, P])
                        .plus(-ee.clone(), &[K2])
                        .plus(-c.gp_const.clone(), &[P]),
                ),
            ];
            rels.extend(involution_relations(g));
            let constants = vec![
                ("gamma", g.clone()),
                ("c_p", c.p_const.clone()),
                ("c_gp", c.gp_const.clone()),
            ];
            let spec = OperatorSpec::YZ {
                params: params.clone(),
                eps: eps.clone(),
            };
            (spec, g.clone(), rels, constants)
        }
    };
    let real = Realization {
        k1: k1_spec.build()?,
        p: OperatorSpec::InvolutionP { gamma }.build()?,
    };
    let mut reports = Vec::new();
    for (id, expr) in relations {
        let residuals = (0..=degree_cap)
            .map(|j| real.apply_expr(&expr, &LaurentPoly::monomial(j as i64, Rational::one())))
            .collect::<Result<Vec<_>>>()?;
        reports.push(AlgebraRelationReport {
            relation: format!("{}:{id}", family.name()),
            degree_cap,
            residuals,
            constants: constants.clone(),
        });
    }
    Ok(reports)
}
