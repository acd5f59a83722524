//! Minimal reverse-mode automatic differentiation over [`Tensor`].
//!
//! A [`Tape`] is an append-only arena of nodes. Operations push a node
//! holding the forward value plus a boxed backward closure that scatters
//! the incoming gradient to the node's parents. Parents always precede
//! children, so [`Tape::backward`] is a single reverse sweep.
//!
//! The engine is deliberately small: `f64` only, no broadcasting, and only
//! the operations the model needs. Every operation's gradient is covered
//! by a central-finite-difference test in this module's test suite.

mod conv;
mod ops;

use crate::tensor::Tensor;

/// Handle to a tape node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Var(pub(crate) usize);

pub(crate) type BackFn = Box<dyn Fn(&[Node], &Tensor, &mut [Option<Tensor>]) + Send>;

pub(crate) struct Node {
    pub(crate) value: Tensor,
    pub(crate) needs_grad: bool,
    pub(crate) back: Option<BackFn>,
}

#[derive(Default)]
pub struct Tape {
    nodes: Vec<Node>,
    attention: Vec<usize>,
}

impl Tape {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Drop all nodes, keeping allocations out of the picture for reuse
    /// across independent forward passes.
    pub fn reset(&mut self) {
        self.nodes.clear();
        self.attention.clear();
    }

    /// Insert a leaf. `needs_grad` marks parameters; inputs and constants
    /// should pass `false` unless the test differentiates through them.
    pub fn leaf(&mut self, value: Tensor, needs_grad: bool) -> Var {
        self.push(value, needs_grad, None)
    }

    pub fn constant(&mut self, value: Tensor) -> Var {
        self.leaf(value, false)
    }

    pub fn value(&self, v: Var) -> &Tensor {
        &self.nodes[v.0].value
    }

    pub fn needs_grad(&self, v: Var) -> bool {
        self.nodes[v.0].needs_grad
    }

    pub(crate) fn push(&mut self, value: Tensor, needs_grad: bool, back: Option<BackFn>) -> Var {
        self.nodes.push(Node { value, needs_grad, back });
        Var(self.nodes.len() - 1)
    }

    /// Tag a node as an attention matrix so tests and diagnostics can
    /// inspect every `SA` produced during a forward pass.
    pub fn mark_attention(&mut self, v: Var) {
        self.attention.push(v.0);
    }

    pub fn attention_matrices(&self) -> Vec<&Tensor> {
        self.attention.iter().map(|&i| &self.nodes[i].value).collect()
    }

    /// Reverse sweep from a scalar root. Returns per-leaf gradients;
    /// interior gradients are freed as soon as they have been consumed.
    pub fn backward(&self, root: Var) -> Gradients {
        assert_eq!(self.nodes[root.0].value.len(), 1, "backward root must be scalar");
        let mut grads: Vec<Option<Tensor>> = Vec::with_capacity(self.nodes.len());
        grads.resize_with(self.nodes.len(), || None);
        grads[root.0] = Some(Tensor::scalar(1.0));
        for i in (0..=root.0).rev() {
            if self.nodes[i].back.is_none() {
                continue; // leaf: keep its accumulated gradient
            }
            let Some(g) = grads[i].take() else { continue };
            if let Some(back) = &self.nodes[i].back {
                back(&self.nodes, &g, &mut grads);
            }
        }
        Gradients { grads }
    }
}

/// Gradient results of one backward sweep.
pub struct Gradients {
    grads: Vec<Option<Tensor>>,
}

impl Gradients {
    pub fn get(&self, v: Var) -> Option<&Tensor> {
        self.grads.get(v.0).and_then(|g| g.as_ref())
    }

    /// Gradient for a leaf, zeros when the node never received one.
    pub fn get_or_zeros(&self, v: Var, shape: &[usize]) -> Tensor {
        match self.get(v) {
            Some(g) => g.clone(),
            None => Tensor::zeros(shape),
        }
    }
}

pub(crate) fn accumulate(slot: &mut Option<Tensor>, delta: Tensor) {
    match slot {
        Some(acc) => {
            debug_assert_eq!(acc.shape(), delta.shape());
            for (a, d) in acc.data_mut().iter_mut().zip(delta.data()) {
                *a += d;
            }
        }
        None => *slot = Some(delta),
    }
}

#[cfg(test)]
mod tests;
