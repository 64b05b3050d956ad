//! Integer combinations of named classes, written like `3H - 2Gamma - B`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lattice::{DivisorClass, Lattice, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("empty expression")]
    Empty,
    #[error("unexpected `{found}` at offset {offset} in `{input}`")]
    Unexpected { input: String, offset: usize, found: char },
    #[error("missing class name at offset {offset} in `{input}`")]
    MissingName { input: String, offset: usize },
    #[error("unknown class `{0}`")]
    Unbound(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A parsed expression: a list of `(coefficient, name)` terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combination {
    pub terms: Vec<(BigInt, String)>,
}

impl Combination {
    pub fn parse(input: &str) -> Result<Self, ExprError> {
        Parser { input, chars: input.char_indices().collect(), pos: 0 }.parse()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|(_, n)| n.as_str())
    }

    /// Fold the terms with a caller-supplied resolver and linear structure.
    pub fn evaluate<T, E>(
        &self,
        zero: T,
        mut resolve: impl FnMut(&str) -> Result<T, E>,
        mut axpy: impl FnMut(T, &BigInt, T) -> Result<T, E>,
    ) -> Result<T, E> {
        let mut acc = zero;
        for (coef, name) in &self.terms {
            let v = resolve(name)?;
            acc = axpy(acc, coef, v)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, n)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{n}")?;
            } else {
                write!(f, "{mag}{n}")?;
            }
        }
        Ok(())
    }
}

/// Names that expressions may refer to: the basis of a lattice plus any
/// extra named classes on it.
#[derive(Debug, Clone)]
pub struct Namespace {
    lattice: Arc<Lattice>,
    names: BTreeMap<String, DivisorClass>,
}

impl Namespace {
    pub fn new(lattice: &Arc<Lattice>) -> Self {
        let names =
            lattice.basis_names().iter().enumerate().map(|(i, n)| (n.clone(), lattice.basis_class(i))).collect();
        Namespace { lattice: Arc::clone(lattice), names }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    /// Bind `name`, replacing an earlier binding.
    pub fn insert(&mut self, name: impl Into<String>, class: DivisorClass) -> Result<(), LatticeError> {
        self.lattice.zero().checked_add(&class)?;
        self.names.insert(name.into(), class);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&DivisorClass> {
        self.names.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = (&String, &DivisorClass)> {
        self.names.iter()
    }

    pub fn eval(&self, input: &str) -> Result<DivisorClass, ExprError> {
        self.eval_combination(&Combination::parse(input)?)
    }

    pub fn eval_combination(&self, combo: &Combination) -> Result<DivisorClass, ExprError> {
        combo.evaluate(
            self.lattice.zero(),
            |n| self.names.get(n).cloned().ok_or_else(|| ExprError::Unbound(n.to_string())),
            |acc, k, v| Ok(acc.checked_add(&v.scale(k))?),
        )
    }
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<(usize, char)> {
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.chars.get(self.pos).copied()
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.input.len(), |&(o, _)| o)
    }

    fn unexpected(&self, offset: usize, found: char) -> ExprError {
        ExprError::Unexpected { input: self.input.to_string(), offset, found }
    }

    fn parse(mut self) -> Result<Combination, ExprError> {
        if self.peek().is_none() {
            return Err(ExprError::Empty);
        }
        if let Some((_, '0')) = self.peek() {
            let save = self.pos;
            self.pos += 1;
            if self.peek().is_none() {
                return Ok(Combination { terms: Vec::new() });
            }
            self.pos = save;
        }
        let mut terms = Vec::new();
        let mut first = true;
        while let Some((off, c)) = self.peek() {
            let sign = match c {
                '+' => {
                    self.pos += 1;
                    1
                }
                '-' => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => return Err(self.unexpected(off, c)),
            };
            first = false;
            terms.push(self.term(sign)?);
        }
        Ok(Combination { terms })
    }

    fn term(&mut self, sign: i64) -> Result<(BigInt, String), ExprError> {
        let mut coef = BigInt::from(sign);
        if let Some((_, c)) = self.peek() {
            if c.is_ascii_digit() {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|&(_, c)| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                coef *= digits.parse::<BigInt>().expect("ascii digits");
                if let Some((_, '*')) = self.peek() {
                    self.pos += 1;
                }
            }
        }
        match self.peek() {
            Some((_, c)) if is_name_start(c) => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|&(_, c)| is_name_char(c)) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                Ok((coef, name))
            }
            Some((off, c)) if !matches!(c, '+' | '-') => Err(self.unexpected(off, c)),
            _ => Err(ExprError::MissingName { input: self.input.to_string(), offset: self.offset() }),
        }
    }
}
