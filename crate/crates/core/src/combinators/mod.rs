//! The ensemble algebra: row and column shuffles, stacking, concatenation and the
//! combined ensembles built from them.
//!
//! An [`EnsembleExpr`] is an immutable tree. Evaluating it yields an [`Acwd`]: a
//! [`SplitAcwdTensor`] together with the symmetry flags that license the compact
//! formulas. Flags are structural, derived from the tree shape rather than detected
//! from values.

mod eval;
mod ops;
mod typed;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_rational::BigRational;

use crate::base::{EnsembleParams, Family};
use crate::bits::{BitMatrix, SyndromeVector};
use crate::error::{Error, Result};
use crate::tensor::{AcwdTable, SplitAcwdTensor};

pub use eval::Evaluator;
pub use ops::{
    col_shuffle_acwd, concat, concat_acwd, concat_row_symmetric, concat_row_symmetric_acwd,
    gallager_row_shuffled, row_shuffle, row_shuffle_acwd, row_shuffle_by_enumeration,
    split_concat_acwd, stack, stack_acwd, stacked_row_shuffled, stacked_row_shuffled_acwd,
};
pub use typed::{type1_acwd, type1_table, type2_acwd, type2_tensor, validate_type1, validate_type2};

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

/// Exact ACWD of an ensemble plus the symmetry flags it was derived with.
///
/// A row-symmetric value always uses the single-block partition `[m]`.
#[derive(Clone, PartialEq, Debug)]
pub struct Acwd {
    tensor: SplitAcwdTensor,
    column_symmetric: bool,
    row_symmetric: bool,
}

impl Acwd {
    pub fn new(tensor: SplitAcwdTensor, column_symmetric: bool, row_symmetric: bool) -> Result<Self> {
        if row_symmetric && tensor.parts().len() != 1 {
            return Err(Error::Shape(format!(
                "row-symmetric ACWD must use one row block, got partition {:?}",
                tensor.parts()
            )));
        }
        Ok(Acwd { tensor, column_symmetric, row_symmetric })
    }

    pub fn from_table(table: &AcwdTable, column_symmetric: bool) -> Self {
        Acwd {
            tensor: SplitAcwdTensor::from_table(table),
            column_symmetric,
            row_symmetric: true,
        }
    }

    pub fn tensor(&self) -> &SplitAcwdTensor {
        &self.tensor
    }

    pub fn into_tensor(self) -> SplitAcwdTensor {
        self.tensor
    }

    pub fn n(&self) -> usize {
        self.tensor.n()
    }

    pub fn m(&self) -> usize {
        self.tensor.m()
    }

    pub fn column_symmetric(&self) -> bool {
        self.column_symmetric
    }

    pub fn row_symmetric(&self) -> bool {
        self.row_symmetric
    }

    /// `B_w(sigma)` table when the value is row symmetric.
    pub fn table(&self) -> Option<AcwdTable> {
        if self.row_symmetric {
            self.tensor.to_table()
        } else {
            None
        }
    }

    /// `A_w(s)` at a full syndrome.
    pub fn at(&self, w: usize, s: &SyndromeVector) -> Result<BigRational> {
        self.tensor.at_syndrome(w, s)
    }
}

#[derive(Clone, Debug)]
pub enum ExprKind {
    Base(EnsembleParams),
    RowShuffle(EnsembleExpr),
    ColShuffle(EnsembleExpr),
    Stack(Vec<EnsembleExpr>),
    Concat(Vec<EnsembleExpr>),
}

#[derive(Debug)]
struct Node {
    id: u64,
    kind: ExprKind,
    n: usize,
    m: usize,
    column_symmetric: bool,
    row_symmetric: bool,
}

/// Shared handle to an immutable expression node. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct EnsembleExpr(Arc<Node>);

impl EnsembleExpr {
    fn make(kind: ExprKind, n: usize, m: usize, column_symmetric: bool, row_symmetric: bool) -> Self {
        EnsembleExpr(Arc::new(Node {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            kind,
            n,
            m,
            column_symmetric,
            row_symmetric,
        }))
    }

    pub fn base(params: EnsembleParams) -> Self {
        let (n, m) = (params.n(), params.m());
        let (c, r) = (params.column_symmetric(), params.row_symmetric());
        Self::make(ExprKind::Base(params), n, m, c, r)
    }

    pub fn gallager(j: usize, k: usize, n: usize) -> Result<Self> {
        EnsembleParams::gallager(j, k, n).map(Self::base)
    }

    pub fn constant_row(k: usize, n: usize, m: usize) -> Result<Self> {
        EnsembleParams::constant_row(k, n, m).map(Self::base)
    }

    pub fn bipartite(j: usize, k: usize, n: usize) -> Result<Self> {
        EnsembleParams::bipartite(j, k, n).map(Self::base)
    }

    pub fn single_matrix(h: BitMatrix) -> Result<Self> {
        EnsembleParams::single_matrix(h).map(Self::base)
    }

    /// Enlarge by all row permutations.
    pub fn row_shuffle(&self) -> Self {
        Self::make(ExprKind::RowShuffle(self.clone()), self.n(), self.m(), self.column_symmetric(), true)
    }

    /// Enlarge by all column permutations.
    pub fn col_shuffle(&self) -> Self {
        Self::make(ExprKind::ColShuffle(self.clone()), self.n(), self.m(), true, self.row_symmetric())
    }

    /// `children[0] / children[1] / ...`; every child after the first must be column symmetric.
    pub fn stack(children: Vec<EnsembleExpr>) -> Result<Self> {
        let first = children
            .first()
            .ok_or_else(|| Error::InvalidParameters("stack needs at least one child".into()))?;
        let n = first.n();
        if let Some(bad) = children.iter().find(|c| c.n() != n) {
            return Err(Error::InvalidParameters(format!(
                "stack children must share the column size {n}, but {bad} has {}",
                bad.n()
            )));
        }
        if let Some(bad) = children[1..].iter().find(|c| !c.column_symmetric()) {
            return Err(Error::Shape(format!(
                "stacked component {bad} is not column symmetric; wrap it in col_shuffle"
            )));
        }
        let m = children.iter().map(EnsembleExpr::m).sum();
        let col = children.iter().all(EnsembleExpr::column_symmetric);
        Ok(Self::make(ExprKind::Stack(children), n, m, col, false))
    }

    /// `children[0] children[1] ...` side by side.
    pub fn concat(children: Vec<EnsembleExpr>) -> Result<Self> {
        let first = children
            .first()
            .ok_or_else(|| Error::InvalidParameters("concat needs at least one child".into()))?;
        let m = first.m();
        if let Some(bad) = children.iter().find(|c| c.m() != m) {
            return Err(Error::InvalidParameters(format!(
                "concat children must share the row size {m}, but {bad} has {}",
                bad.m()
            )));
        }
        let n = children.iter().map(EnsembleExpr::n).sum();
        let row = children.iter().all(EnsembleExpr::row_symmetric);
        Ok(Self::make(ExprKind::Concat(children), n, m, false, row))
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn kind(&self) -> &ExprKind {
        &self.0.kind
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    pub fn column_symmetric(&self) -> bool {
        self.0.column_symmetric
    }

    pub fn row_symmetric(&self) -> bool {
        self.0.row_symmetric
    }

    pub fn children(&self) -> Vec<&EnsembleExpr> {
        match self.kind() {
            ExprKind::Base(_) => vec![],
            ExprKind::RowShuffle(c) | ExprKind::ColShuffle(c) => vec![c],
            ExprKind::Stack(cs) | ExprKind::Concat(cs) => cs.iter().collect(),
        }
    }

    /// Evaluate with a fresh memo table.
    pub fn acwd(&self) -> Result<Acwd> {
        Evaluator::new().evaluate(self).map(|a| (*a).clone())
    }
}

impl fmt::Display for EnsembleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, cs: &[EnsembleExpr]| {
            write!(f, "{name}(")?;
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        };
        match self.kind() {
            ExprKind::Base(p) => match p.family() {
                Family::Gallager { j, k } => write!(f, "gallager(j={j}, k={k}, n={})", p.n()),
                Family::ConstantRow { k } => write!(f, "constant_row(k={k}, n={}, m={})", p.n(), p.m()),
                Family::Bipartite { j, k } => write!(f, "bipartite(j={j}, k={k}, n={})", p.n()),
                Family::SingleMatrix(h) => {
                    write!(f, "single_matrix[{}]", h.to_string().replace('\n', "/"))
                }
            },
            ExprKind::RowShuffle(c) => write!(f, "row_shuffle({c})"),
            ExprKind::ColShuffle(c) => write!(f, "col_shuffle({c})"),
            ExprKind::Stack(cs) => list(f, "stack", cs),
            ExprKind::Concat(cs) => list(f, "concat", cs),
        }
    }
}
