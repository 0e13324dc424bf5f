use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::ops::{col_shuffle_acwd, concat, row_shuffle, stack, stacked_row_shuffled};
use super::{Acwd, EnsembleExpr, ExprKind};
use crate::error::Result;

/// Memoizing evaluator. Each node's full tensor is computed once per evaluator;
/// shared subtrees (same node id) are reused.
///
/// Concurrent callers may race to fill the same entry; the insert is idempotent.
#[derive(Default)]
pub struct Evaluator {
    memo: Mutex<HashMap<u64, Arc<Acwd>>>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of memoized nodes.
    pub fn cached(&self) -> usize {
        self.memo.lock().expect("memo poisoned").len()
    }

    pub fn evaluate(&self, e: &EnsembleExpr) -> Result<Arc<Acwd>> {
        if let Some(hit) = self.memo.lock().expect("memo poisoned").get(&e.id()) {
            return Ok(hit.clone());
        }
        let value = Arc::new(self.compute(e)?);
        Ok(self
            .memo
            .lock()
            .expect("memo poisoned")
            .entry(e.id())
            .or_insert(value)
            .clone())
    }

    fn compute(&self, e: &EnsembleExpr) -> Result<Acwd> {
        match e.kind() {
            ExprKind::Base(p) => Acwd::new(p.acwd()?, p.column_symmetric(), p.row_symmetric()),
            ExprKind::ColShuffle(c) => Ok(col_shuffle_acwd(&*self.evaluate(c)?)),
            ExprKind::RowShuffle(c) => {
                if let ExprKind::Stack(cs) = c.kind() {
                    let vals = cs.iter().map(|x| self.evaluate(x)).collect::<Result<Vec<_>>>()?;
                    let refs: Vec<&Acwd> = vals.iter().map(|v| &**v).collect();
                    return stacked_row_shuffled(&refs);
                }
                let v = self.evaluate(c)?;
                if v.row_symmetric() {
                    return Ok((*v).clone());
                }
                Ok(Acwd::from_table(&row_shuffle(v.tensor()), v.column_symmetric()))
            }
            ExprKind::Stack(cs) => {
                let vals = cs.iter().map(|x| self.evaluate(x)).collect::<Result<Vec<_>>>()?;
                let refs: Vec<&Acwd> = vals.iter().map(|v| &**v).collect();
                stack(&refs)
            }
            ExprKind::Concat(cs) => {
                let mut acc = (*self.evaluate(&cs[0])?).clone();
                for c in &cs[1..] {
                    acc = concat(&acc, &*self.evaluate(c)?)?;
                }
                Ok(acc)
            }
        }
    }
}
