use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Which role a variable plays. Geometric variables are the coordinates of
/// the schemes under study; parameter variables are the coordinates of the
/// dual projective space (or the transcendental parameters themselves).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    Geometric,
    Parameter,
}

/// An ordered list of named variables, each tagged with its block.
///
/// The monomial order is graded reverse lexicographic inside each block with
/// the geometric block compared first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
    blocks: Vec<Block>,
    geometric: Vec<usize>,
    parameter: Vec<usize>,
}

impl VarContext {
    pub fn new(vars: Vec<(String, Block)>) -> Result<Arc<Self>> {
        let mut names = Vec::with_capacity(vars.len());
        let mut blocks = Vec::with_capacity(vars.len());
        for (name, block) in vars {
            if names.contains(&name) {
                return Err(Error::ContextMismatch(format!("duplicate variable `{name}`")));
            }
            names.push(name);
            blocks.push(block);
        }
        let geometric = (0..names.len()).filter(|&i| blocks[i] == Block::Geometric).collect();
        let parameter = (0..names.len()).filter(|&i| blocks[i] == Block::Parameter).collect();
        Ok(Arc::new(VarContext { names, blocks, geometric, parameter }))
    }

    /// All variables in one block.
    pub fn uniform<S: AsRef<str>>(names: &[S], block: Block) -> Arc<Self> {
        Self::new(names.iter().map(|n| (n.as_ref().to_string(), block)).collect()).expect("distinct variable names")
    }

    pub fn geometric<S: AsRef<str>>(names: &[S]) -> Arc<Self> {
        Self::uniform(names, Block::Geometric)
    }

    pub fn parameters<S: AsRef<str>>(names: &[S]) -> Arc<Self> {
        Self::uniform(names, Block::Parameter)
    }

    pub fn empty() -> Arc<Self> {
        Self::uniform::<&str>(&[], Block::Geometric)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn block(&self, i: usize) -> Block {
        self.blocks[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn indices_in(&self, block: Block) -> &[usize] {
        match block {
            Block::Geometric => &self.geometric,
            Block::Parameter => &self.parameter,
        }
    }

    pub fn entries(&self) -> Vec<(String, Block)> {
        self.names.iter().cloned().zip(self.blocks.iter().copied()).collect()
    }

    /// Sub-context keeping only the listed positions, in order.
    pub fn restrict(&self, keep: &[usize]) -> Arc<Self> {
        Self::new(keep.iter().map(|&i| (self.names[i].clone(), self.blocks[i])).collect())
            .expect("restriction of a valid context")
    }

    /// Compare two monomials under the block graded-reverse-lex order.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.parameter.is_empty() || self.geometric.is_empty() {
            return grevlex(a.exponents(), b.exponents(), None);
        }
        grevlex(a.exponents(), b.exponents(), Some(&self.geometric))
            .then_with(|| grevlex(a.exponents(), b.exponents(), Some(&self.parameter)))
    }
}

fn grevlex(a: &[u32], b: &[u32], idx: Option<&[usize]>) -> Ordering {
    match idx {
        None => {
            let da: u64 = a.iter().map(|&e| e as u64).sum();
            let db: u64 = b.iter().map(|&e| e as u64).sum();
            da.cmp(&db).then_with(|| {
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            })
        }
        Some(idx) => {
            let da: u64 = idx.iter().map(|&i| a[i] as u64).sum();
            let db: u64 = idx.iter().map(|&i| b[i] as u64).sum();
            da.cmp(&db).then_with(|| {
                for &i in idx.iter().rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            })
        }
    }
}

/// Exponent vector indexed by a [`VarContext`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(e: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn var(nvars: usize, i: usize, exp: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = exp;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, e: u32) {
        self.0[i] = e;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree_in(&self, idx: &[usize]) -> u32 {
        idx.iter().map(|&i| self.0[i]).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

impl fmt::Display for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.names.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}
