//! Validated views of the two combined-ensemble shapes.
//!
//! Type I: a concatenation whose components are row symmetric, typically
//! `row_shuffle(stack(...))` or a row-symmetric base. Evaluated as a left fold of
//! row-symmetric concatenations, giving a single `B_w(sigma)` table.
//!
//! Type II: a concatenation of stacks that share one row partition `(m_1, ..., m_u)`,
//! with row-symmetric stack members. Components that are not stacks must be row
//! symmetric over all `m` rows. The result is a split-syndrome tensor.

use num_rational::BigRational;

use super::ops::{concat_row_symmetric, concat_tensors};
use super::{EnsembleExpr, Evaluator, ExprKind};
use crate::error::{Error, Result};
use crate::tensor::{AcwdTable, SplitAcwdTensor};

fn flatten_concat(e: &EnsembleExpr, out: &mut Vec<EnsembleExpr>) {
    match e.kind() {
        ExprKind::Concat(cs) => cs.iter().for_each(|c| flatten_concat(c, out)),
        _ => out.push(e.clone()),
    }
}

/// Concatenated components of a type I expression, left to right.
pub fn validate_type1(e: &EnsembleExpr) -> Result<Vec<EnsembleExpr>> {
    let mut comps = Vec::new();
    flatten_concat(e, &mut comps);
    if let Some(bad) = comps.iter().find(|c| !c.row_symmetric()) {
        return Err(Error::Shape(format!(
            "type I component {bad} is not row symmetric; expected row_shuffle(stack(...)) or a row-symmetric ensemble"
        )));
    }
    Ok(comps)
}

pub fn type1_table(e: &EnsembleExpr) -> Result<AcwdTable> {
    let comps = validate_type1(e)?;
    let ev = Evaluator::new();
    let mut acc = (*ev.evaluate(&comps[0])?).clone();
    for c in &comps[1..] {
        acc = concat_row_symmetric(&acc, &*ev.evaluate(c)?)?;
    }
    Ok(acc.table().expect("row-symmetric fold"))
}

pub fn type1_acwd(e: &EnsembleExpr, sigma: usize, w: usize) -> Result<BigRational> {
    Ok(type1_table(e)?.get(w, sigma))
}

fn find_shuffled_stack(e: &EnsembleExpr) -> Option<EnsembleExpr> {
    fn contains_stack(e: &EnsembleExpr) -> bool {
        matches!(e.kind(), ExprKind::Stack(_)) || e.children().into_iter().any(contains_stack)
    }
    if let ExprKind::RowShuffle(c) = e.kind() {
        if contains_stack(c) {
            return Some(e.clone());
        }
    }
    e.children().into_iter().find_map(find_shuffled_stack)
}

/// Shared row partition and concatenated components of a type II expression.
pub fn validate_type2(e: &EnsembleExpr) -> Result<(Vec<usize>, Vec<EnsembleExpr>)> {
    let mut comps = Vec::new();
    flatten_concat(e, &mut comps);
    let mut partition: Option<Vec<usize>> = None;
    for c in &comps {
        match c.kind() {
            ExprKind::Stack(members) => {
                let heights: Vec<usize> = members.iter().map(EnsembleExpr::m).collect();
                match &partition {
                    None => partition = Some(heights),
                    Some(p) if *p != heights => {
                        return Err(Error::Shape(format!(
                            "type II stack {c} has row partition {heights:?}, expected {p:?}"
                        )))
                    }
                    Some(_) => {}
                }
                for x in members {
                    if !x.row_symmetric() {
                        return Err(Error::Shape(format!(
                            "type II stack member {x} is not row symmetric"
                        )));
                    }
                    if let Some(bad) = find_shuffled_stack(x) {
                        return Err(Error::Shape(format!(
                            "row shuffle over a stack inside a type II stack is not supported: {bad}"
                        )));
                    }
                }
            }
            _ if c.row_symmetric() => {}
            _ => {
                return Err(Error::Shape(format!(
                    "type II component {c} is neither a stack nor row symmetric"
                )))
            }
        }
    }
    Ok((partition.unwrap_or_else(|| vec![e.m()]), comps))
}

pub fn type2_tensor(e: &EnsembleExpr) -> Result<SplitAcwdTensor> {
    let (partition, comps) = validate_type2(e)?;
    let ev = Evaluator::new();
    let mut acc = ev.evaluate(&comps[0])?.tensor().refine(&partition)?;
    for c in &comps[1..] {
        acc = concat_tensors(&acc, &ev.evaluate(c)?.tensor().refine(&partition)?)?;
    }
    Ok(acc)
}

/// `C_w(sigma_1, ..., sigma_u)` of a type II expression.
pub fn type2_acwd(e: &EnsembleExpr, sigmas: &[usize], w: usize) -> Result<BigRational> {
    let t = type2_tensor(e)?;
    if sigmas.len() != t.parts().len() {
        return Err(Error::InvalidParameters(format!(
            "expected {} block weights, got {}",
            t.parts().len(),
            sigmas.len()
        )));
    }
    Ok(t.get(w, sigmas))
}
