//! Squarefree monomial ideals, stored by the supports of their minimal
//! generators.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::bits::{self, bit, SetKey};
use crate::clutter::{self, Clutter};
use crate::error::{Error, Result};
use crate::graph::check_label;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeMonomialIdeal {
    variables: Vec<String>,
    /// Canonical order. `[0]` is the unit ideal, `[]` the zero ideal.
    generators: Vec<u64>,
}

/// An ordering with linear quotients and the colon variables at each step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearQuotients {
    pub order: Vec<Vec<String>>,
    /// `colons[i]` generates `(u_1, …, u_{i-1}) : u_i`; empty for `i = 0`.
    pub colons: Vec<Vec<String>>,
}

impl SquarefreeMonomialIdeal {
    pub fn new<V, G, S>(variables: V, generators: G) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        G: IntoIterator<Item = Vec<S>>,
        S: AsRef<str>,
    {
        let mut labels = BTreeSet::new();
        for v in variables {
            check_label(v.as_ref())?;
            labels.insert(v.as_ref().to_string());
        }
        let gens: Vec<Vec<String>> = generators
            .into_iter()
            .map(|g| g.iter().map(|v| v.as_ref().to_string()).collect())
            .collect();
        for g in &gens {
            for v in g {
                check_label(v)?;
                labels.insert(v.clone());
            }
        }
        if labels.len() > bits::MAX_VERTICES {
            return Err(Error::LimitExceeded {
                what: "variable count",
                value: labels.len(),
                limit: bits::MAX_VERTICES,
            });
        }
        let variables: Vec<String> = labels.into_iter().collect();
        let mut masks: Vec<u64> = gens
            .iter()
            .map(|g| {
                g.iter()
                    .fold(0, |m, v| m | bit(variables.binary_search(v).unwrap()))
            })
            .collect();
        bits::sort_canonical(&mut masks);
        masks.dedup();
        check_antichain(&masks, &variables)?;
        Ok(SquarefreeMonomialIdeal {
            variables,
            generators: masks,
        })
    }

    pub(crate) fn from_masks(variables: Vec<String>, generators: Vec<u64>) -> Self {
        let mut generators = bits::minimalize(generators);
        bits::sort_canonical(&mut generators);
        SquarefreeMonomialIdeal {
            variables,
            generators,
        }
    }

    /// `I(𝒞)`: one generator per edge.
    pub fn edge_ideal(c: &Clutter) -> Self {
        SquarefreeMonomialIdeal::from_masks(c.vertices().to_vec(), c.edge_masks().to_vec())
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn generators(&self) -> Vec<Vec<&str>> {
        self.generators
            .iter()
            .map(|&g| bits::labels(g, &self.variables))
            .collect()
    }

    pub fn generator_masks(&self) -> &[u64] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators == [0]
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// The clutter of generator supports, for proper nonzero ideals.
    pub fn clutter(&self) -> Result<Clutter> {
        self.check_proper()?;
        Ok(Clutter::from_masks(self.variables.clone(), self.generators.clone()))
    }

    fn check_proper(&self) -> Result<()> {
        if self.is_unit() {
            return Err(Error::DegenerateIdeal("unit ideal"));
        }
        if self.is_zero() {
            return Err(Error::DegenerateIdeal("zero ideal"));
        }
        Ok(())
    }

    /// `I^∨`, generated by the minimal vertex covers of the generator clutter.
    pub fn alexander_dual(&self) -> Result<Self> {
        self.check_proper()?;
        Ok(SquarefreeMonomialIdeal::from_masks(
            self.variables.clone(),
            clutter::minimal_transversals(&self.generators),
        ))
    }

    /// Generators of `I_[d]`: squarefree degree-`d` multiples of generators.
    pub fn degree_component(&self, d: usize) -> Result<Self> {
        let n = self.variables.len();
        if d > n {
            return Err(Error::DegreeOutOfRange { d, n });
        }
        let mut out = Vec::new();
        crate::complex::for_each_subset_of_size(bits::full(n), d, &mut |s| {
            if self.generators.iter().any(|&g| bits::is_subset(g, s)) {
                out.push(s);
            }
        });
        bits::sort_canonical(&mut out);
        Ok(SquarefreeMonomialIdeal {
            variables: self.variables.clone(),
            generators: out,
        })
    }

    pub fn linear_quotients(&self) -> Option<LinearQuotients> {
        linear_quotient_order(&self.generators).map(|order| describe(&order, &self.variables))
    }

    /// One generator per line, whitespace-separated variables; an optional
    /// `variables: …` line declares extra variables; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut variables = Vec::new();
        let mut gens = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("variables:") {
                variables.extend(rest.split_whitespace().map(str::to_string));
                continue;
            }
            let g: Vec<String> = line.split_whitespace().map(str::to_string).collect();
            if let Some(bad) = g.iter().find(|t| t.contains(crate::graph::RESERVED)) {
                return Err(Error::Parse {
                    line: n + 1,
                    message: format!("label `{bad}` contains a reserved character"),
                });
            }
            gens.push(g);
        }
        SquarefreeMonomialIdeal::new(variables, gens)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("variables: {}\n", self.variables.join(" "));
        for g in self.generators() {
            out.push_str(&g.join(" "));
            out.push('\n');
        }
        out
    }
}

fn check_antichain(masks: &[u64], labels: &[String]) -> Result<()> {
    for (i, &a) in masks.iter().enumerate() {
        if let Some(&b) = masks[i + 1..].iter().find(|&&b| bits::is_subset(a, b)) {
            return Err(Error::NotAntichain(format!(
                "{{{}}} ⊆ {{{}}}",
                bits::labels(a, labels).join(","),
                bits::labels(b, labels).join(",")
            )));
        }
    }
    Ok(())
}

/// Linear quotients for a list of supports given by label.
pub fn has_linear_quotients<S: AsRef<str>>(gens: &[Vec<S>]) -> Result<Option<LinearQuotients>> {
    let ideal = SquarefreeMonomialIdeal::new(Vec::<String>::new(), gens.iter().map(|g| g.iter().map(|s| s.as_ref().to_string()).collect()))?;
    Ok(ideal.linear_quotients())
}

fn describe(order: &[u64], variables: &[String]) -> LinearQuotients {
    let colons = (0..order.len())
        .map(|i| bits::owned_labels(colon_variables(&order[..i], order[i]), variables))
        .collect();
    LinearQuotients {
        order: order.iter().map(|&g| bits::owned_labels(g, variables)).collect(),
        colons,
    }
}

fn colon_variables(earlier: &[u64], u: u64) -> u64 {
    earlier
        .iter()
        .map(|&k| k & !u)
        .filter(|&d| bits::len(d) == 1)
        .fold(0, |m, d| m | d)
}

/// Whether `u` may follow the generators in `earlier`: every `u_j ∖ u`
/// contains a single variable of the form `u_k ∖ u`.
fn extends(earlier: &[u64], u: u64) -> bool {
    let vars = colon_variables(earlier, u);
    earlier.iter().all(|&j| j & !u & vars != 0)
}

/// Backtracking over orderings. Candidates are tried by how many placed
/// generators differ from them in one variable, so the greedy path is taken
/// first; failed placed-sets are memoized.
pub(crate) fn linear_quotient_order(gens: &[u64]) -> Option<Vec<u64>> {
    struct Search<'a> {
        gens: &'a [u64],
        placed: Vec<u64>,
        key: SetKey,
        dead: HashSet<SetKey>,
    }

    impl Search<'_> {
        fn go(&mut self) -> bool {
            if self.placed.len() == self.gens.len() {
                return true;
            }
            if self.dead.contains(&self.key) {
                return false;
            }
            let mut candidates: Vec<(usize, usize)> = (0..self.gens.len())
                .filter(|&j| !self.key.contains(j) && extends(&self.placed, self.gens[j]))
                .map(|j| {
                    let u = self.gens[j];
                    let overlap = self.placed.iter().filter(|&&k| bits::len(k & !u) == 1).count();
                    (j, overlap)
                })
                .collect();
            candidates.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            for (j, _) in candidates {
                self.placed.push(self.gens[j]);
                self.key.insert(j);
                if self.go() {
                    return true;
                }
                self.placed.pop();
                self.key.remove(j);
            }
            self.dead.insert(self.key.clone());
            false
        }
    }

    let mut search = Search {
        gens,
        placed: Vec::with_capacity(gens.len()),
        key: SetKey::with_capacity(gens.len()),
        dead: HashSet::new(),
    };
    search.go().then_some(search.placed)
}
