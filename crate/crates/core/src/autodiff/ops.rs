//! Element-wise, reduction, matrix and normalization operations.

use super::{accumulate, Node, Tape, Var};
use crate::tensor::Tensor;

const GELU_S: f64 = 0.797_884_560_802_865_4; // sqrt(2/pi)
const GELU_A: f64 = 0.044_715;
const LN_EPS: f64 = 1e-6;

/// GELU in its tanh form; the backward pass is the exact derivative of
/// this expression, not of the erf definition.
pub(crate) fn gelu_scalar(x: f64) -> f64 {
    0.5 * x * (1.0 + (GELU_S * (x + GELU_A * x * x * x)).tanh())
}

pub(crate) fn gelu_grad_scalar(x: f64) -> f64 {
    let u = GELU_S * (x + GELU_A * x * x * x);
    let t = u.tanh();
    let sech2 = 1.0 - t * t;
    0.5 * (1.0 + t) + 0.5 * x * sech2 * GELU_S * (1.0 + 3.0 * GELU_A * x * x)
}

pub(crate) fn softplus_scalar(x: f64) -> f64 {
    if x > 30.0 {
        x
    } else {
        x.exp().ln_1p()
    }
}

impl Tape {
    pub fn add(&mut self, a: Var, b: Var) -> Var {
        let (va, vb) = (&self.nodes[a.0].value, &self.nodes[b.0].value);
        assert_eq!(va.shape(), vb.shape(), "add shape mismatch");
        let mut out = va.clone();
        for (o, &v) in out.data_mut().iter_mut().zip(vb.data()) {
            *o += v;
        }
        let needs = self.needs_grad(a) || self.needs_grad(b);
        let (na, nb) = (self.needs_grad(a), self.needs_grad(b));
        self.push(
            out,
            needs,
            Some(Box::new(move |_n: &[Node], g: &Tensor, grads: &mut [Option<Tensor>]| {
                if na {
                    accumulate(&mut grads[a.0], g.clone());
                }
                if nb {
                    accumulate(&mut grads[b.0], g.clone());
                }
            })),
        )
    }

    pub fn sub(&mut self, a: Var, b: Var) -> Var {
        let (va, vb) = (&self.nodes[a.0].value, &self.nodes[b.0].value);
        assert_eq!(va.shape(), vb.shape(), "sub shape mismatch");
        let mut out = va.clone();
        for (o, &v) in out.data_mut().iter_mut().zip(vb.data()) {
            *o -= v;
        }
        let needs = self.needs_grad(a) || self.needs_grad(b);
        let (na, nb) = (self.needs_grad(a), self.needs_grad(b));
        self.push(
            out,
            needs,
            Some(Box::new(move |_n, g, grads| {
                if na {
                    accumulate(&mut grads[a.0], g.clone());
                }
                if nb {
                    accumulate(&mut grads[b.0], g.map(|v| -v));
                }
            })),
        )
    }

    /// Multiply by a compile-time constant (for example the magnification
    /// factor), which therefore receives no gradient.
    pub fn scale(&mut self, a: Var, k: f64) -> Var {
        let out = self.nodes[a.0].value.map(|v| k * v);
        let needs = self.needs_grad(a);
        self.push(
            out,
            needs,
            Some(Box::new(move |_n, g, grads| {
                if needs {
                    accumulate(&mut grads[a.0], g.map(|v| k * v));
                }
            })),
        )
    }

    pub fn add_scalar(&mut self, a: Var, k: f64) -> Var {
        let out = self.nodes[a.0].value.map(|v| v + k);
        let needs = self.needs_grad(a);
        self.push(
            out,
            needs,
            Some(Box::new(move |_n, g, grads| {
                if needs {
                    accumulate(&mut grads[a.0], g.clone());
                }
            })),
        )
    }

    pub fn mul(&mut self, a: Var, b: Var) -> Var {
        let (va, vb) = (&self.nodes[a.0].value, &self.nodes[b.0].value);
        assert_eq!(va.shape(), vb.shape(), "mul shape mismatch");
        let mut out = va.clone();
        for (o, &v) in out.data_mut().iter_mut().zip(vb.data()) {
            *o *= v;
        }
        let (na, nb) = (self.needs_grad(a), self.needs_grad(b));
        self.push(
            out,
            na || nb,
            Some(Box::new(move |n: &[Node], g, grads| {
                if na {
                    let vb = &n[b.0].value;
                    let mut d = g.clone();
                    for (x, &v) in d.data_mut().iter_mut().zip(vb.data()) {
                        *x *= v;
                    }
                    accumulate(&mut grads[a.0], d);
                }
                if nb {
                    let va = &n[a.0].value;
                    let mut d = g.clone();
                    for (x, &v) in d.data_mut().iter_mut().zip(va.data()) {
                        *x *= v;
                    }
                    accumulate(&mut grads[b.0], d);
                }
            })),
        )
    }

    pub fn div(&mut self, a: Var, b: Var) -> Var {
        let (va, vb) = (&self.nodes[a.0].value, &self.nodes[b.0].value);
        assert_eq!(va.shape(), vb.shape(), "div shape mismatch");
        let mut out = va.clone();
        for (o, &v) in out.data_mut().iter_mut().zip(vb.data()) {
            *o /= v;
        }
        let (na, nb) = (self.needs_grad(a), self.needs_grad(b));
        let out_id = self.nodes.len();
        self.push(
            out,
            na || nb,
            Some(Box::new(move |n: &[Node], g, grads| {
                let vb = &n[b.0].value;
                if na {
                    let mut d = g.clone();
                    for (x, &v) in d.data_mut().iter_mut().zip(vb.data()) {
                        *x /= v;
                    }
                    accumulate(&mut grads[a.0], d);
                }
                if nb {
                    let y = &n[out_id].value;
                    let mut d = g.clone();
                    for ((x, &yv), &bv) in d.data_mut().iter_mut().zip(y.data()).zip(vb.data()) {
                        *x *= -yv / bv;
                    }
                    accumulate(&mut grads[b.0], d);
                }
            })),
        )
    }

    pub fn gelu(&mut self, a: Var) -> Var {
        let out = self.nodes[a.0].value.map(gelu_scalar);
        let needs = self.needs_grad(a);
        self.push(
            out,
            needs,
            Some(Box::new(move |n: &[Node], g, grads| {
                if needs {
                    let x = &n[a.0].value;
                    let mut d = g.clone();
                    for (dv, &xv) in d.data_mut().iter_mut().zip(x.data()) {
                        *dv *= gelu_grad_scalar(xv);
                    }
                    accumulate(&mut grads[a.0], d);
                }
            })),
        )
    }

    pub fn relu(&mut self, a: Var) -> Var {
        let out = self.nodes[a.0].value.map(|v| v.max(0.0));
        let needs = self.needs_grad(a);
        self.push(
            out,
            needs,
            Some(Box::new(move |n: &[Node], g, grads| {
                if needs {
                    let x = &n[a.0].value;
                    let mut d = g.clone();
                    for (dv, &xv) in d.data_mut().iter_mut().zip(x.data()) {
                        if xv <= 0.0 {
                            *dv = 0.0;
                        }
                    }
                    accumulate(&mut grads[a.0], d);
                }
            })),
        )
    }

    pub fn softplus(&mut self, a: Var) -> Var {
        let out = self.nodes[a.0].value.map(softplus_scalar);
        let needs = self.needs_grad(a);
        self.push(
            out,
            needs,
            Some(Box::new(move |n: &[Node], g, grads| {
                if needs {
                    let x = &n[a.0].value;
                    let mut d = g.clone();
                    for (dv, &xv) in d.data_mut().iter_mut().zip(x.data()) {
                        *dv *= 1.0 / (1.0 + (-xv).exp());
                    }
                    accumulate(&mut grads[a.0], d);
                }
            })),
        )
    }

    pub fn square(&mut self, a: Var) -> Var {
        let out = self.nodes[a.0].value.map(|v| v * v);
        let needs = self.needs_grad(a);
        self.push(
            out,
            needs,
            Some(Box::new(move |n: &[Node], g, grads| {
                if needs {
                    let x = &n[a.0].value;
                    let mut d = g.clone();
                    for (dv, &xv) in d.data_mut().iter_mut().zip(x.data()) {
                        *dv *= 2.0 * xv;
                    }
                    accumulate(&mut grads[a.0], d);
                }
            })),
        )
    }

    pub fn sqrt(&mut self, a: Var) -> Var {
        let out = self.nodes[a.0].value.map(f64::sqrt);
        let needs = self.needs_grad(a);
        let out_id = self.nodes.len();
        self.push(
            out,
            needs,
            Some(Box::new(move |n: &[Node], g, grads| {
                if needs {
                    let y = &n[out_id].value;
                    let mut d = g.clone();
                    for (dv, &yv) in d.data_mut().iter_mut().zip(y.data()) {
                        *dv *= 0.5 / yv;
                    }
                    accumulate(&mut grads[a.0], d);
                }
            })),
        )
    }

    /// Mean over all elements, producing a scalar node.
    pub fn mean_all(&mut self, a: Var) -> Var {
        let v = &self.nodes[a.0].value;
        let n = v.len() as f64;
        let out = Tensor::scalar(v.data().iter().sum::<f64>() / n);
        let needs = self.needs_grad(a);
        let shape = v.shape().to_vec();
        self.push(
            out,
            needs,
            Some(Box::new(move |_n, g, grads| {
                if needs {
                    let gv = g.item() / n;
                    accumulate(&mut grads[a.0], Tensor::filled(&shape, gv));
                }
            })),
        )
    }

    /// Divide every element by a positive scalar variable (the learnable
    /// attention temperature).
    pub fn div_scalar_var(&mut self, a: Var, s: Var) -> Var {
        assert_eq!(self.nodes[s.0].value.len(), 1, "div_scalar_var divisor must be scalar");
        let sv = self.nodes[s.0].value.item();
        let out = self.nodes[a.0].value.map(|v| v / sv);
        let (na, ns) = (self.needs_grad(a), self.needs_grad(s));
        self.push(
            out,
            na || ns,
            Some(Box::new(move |n: &[Node], g, grads| {
                let sv = n[s.0].value.item();
                if na {
                    accumulate(&mut grads[a.0], g.map(|v| v / sv));
                }
                if ns {
                    let x = &n[a.0].value;
                    let mut acc = 0.0;
                    for (&gv, &xv) in g.data().iter().zip(x.data()) {
                        acc += gv * xv;
                    }
                    accumulate(&mut grads[s.0], Tensor::scalar(-acc / (sv * sv)));
                }
            })),
        )
    }

    /// `(m, k) x (k, n)` matrix product.
    pub fn matmul(&mut self, a: Var, b: Var) -> Var {
        let (m, ka) = self.nodes[a.0].value.dims2();
        let (kb, n) = self.nodes[b.0].value.dims2();
        assert_eq!(ka, kb, "matmul inner dimension mismatch");
        let mut out = Tensor::zeros(&[m, n]);
        {
            let av = self.nodes[a.0].value.data();
            let bv = self.nodes[b.0].value.data();
            let o = out.data_mut();
            for i in 0..m {
                for k in 0..ka {
                    let aik = av[i * ka + k];
                    if aik == 0.0 {
                        continue;
                    }
                    let brow = &bv[k * n..(k + 1) * n];
                    let orow = &mut o[i * n..(i + 1) * n];
                    for j in 0..n {
                        orow[j] += aik * brow[j];
                    }
                }
            }
        }
        let (na, nb) = (self.needs_grad(a), self.needs_grad(b));
        self.push(
            out,
            na || nb,
            Some(Box::new(move |nodes: &[Node], g, grads| {
                let gv = g.data();
                if na {
                    // dA = G · Bᵀ
                    let bv = nodes[b.0].value.data();
                    let mut da = Tensor::zeros(&[m, ka]);
                    let dav = da.data_mut();
                    for i in 0..m {
                        let grow = &gv[i * n..(i + 1) * n];
                        for k in 0..ka {
                            let brow = &bv[k * n..(k + 1) * n];
                            let mut acc = 0.0;
                            for j in 0..n {
                                acc += grow[j] * brow[j];
                            }
                            dav[i * ka + k] = acc;
                        }
                    }
                    accumulate(&mut grads[a.0], da);
                }
                if nb {
                    // dB = Aᵀ · G
                    let av = nodes[a.0].value.data();
                    let mut db = Tensor::zeros(&[ka, n]);
                    let dbv = db.data_mut();
                    for i in 0..m {
                        let grow = &gv[i * n..(i + 1) * n];
                        for k in 0..ka {
                            let aik = av[i * ka + k];
                            if aik == 0.0 {
                                continue;
                            }
                            let drow = &mut dbv[k * n..(k + 1) * n];
                            for j in 0..n {
                                drow[j] += aik * grow[j];
                            }
                        }
                    }
                    accumulate(&mut grads[b.0], db);
                }
            })),
        )
    }

    /// `A · Bᵀ` for `A (m, k)`, `B (n, k)`; the attention-score product.
    pub fn matmul_nt(&mut self, a: Var, b: Var) -> Var {
        let (m, ka) = self.nodes[a.0].value.dims2();
        let (n, kb) = self.nodes[b.0].value.dims2();
        assert_eq!(ka, kb, "matmul_nt inner dimension mismatch");
        let mut out = Tensor::zeros(&[m, n]);
        {
            let av = self.nodes[a.0].value.data();
            let bv = self.nodes[b.0].value.data();
            let o = out.data_mut();
            for i in 0..m {
                let arow = &av[i * ka..(i + 1) * ka];
                for j in 0..n {
                    let brow = &bv[j * ka..(j + 1) * ka];
                    let mut acc = 0.0;
                    for k in 0..ka {
                        acc += arow[k] * brow[k];
                    }
                    o[i * n + j] = acc;
                }
            }
        }
        let (na, nb) = (self.needs_grad(a), self.needs_grad(b));
        self.push(
            out,
            na || nb,
            Some(Box::new(move |nodes: &[Node], g, grads| {
                let gv = g.data();
                if na {
                    // dA = G · B
                    let bv = nodes[b.0].value.data();
                    let mut da = Tensor::zeros(&[m, ka]);
                    let dav = da.data_mut();
                    for i in 0..m {
                        for j in 0..n {
                            let gij = gv[i * n + j];
                            if gij == 0.0 {
                                continue;
                            }
                            let brow = &bv[j * ka..(j + 1) * ka];
                            let drow = &mut dav[i * ka..(i + 1) * ka];
                            for k in 0..ka {
                                drow[k] += gij * brow[k];
                            }
                        }
                    }
                    accumulate(&mut grads[a.0], da);
                }
                if nb {
                    // dB = Gᵀ · A
                    let av = nodes[a.0].value.data();
                    let mut db = Tensor::zeros(&[n, ka]);
                    let dbv = db.data_mut();
                    for i in 0..m {
                        let arow = &av[i * ka..(i + 1) * ka];
                        for j in 0..n {
                            let gij = gv[i * n + j];
                            if gij == 0.0 {
                                continue;
                            }
                            let drow = &mut dbv[j * ka..(j + 1) * ka];
                            for k in 0..ka {
                                drow[k] += gij * arow[k];
                            }
                        }
                    }
                    accumulate(&mut grads[b.0], db);
                }
            })),
        )
    }

    /// Row-wise softmax of a rank-2 tensor (the dense-attention ablation).
    pub fn softmax_rows(&mut self, a: Var) -> Var {
        let (m, n) = self.nodes[a.0].value.dims2();
        let mut out = Tensor::zeros(&[m, n]);
        {
            let x = self.nodes[a.0].value.data();
            let o = out.data_mut();
            for i in 0..m {
                let row = &x[i * n..(i + 1) * n];
                let mx = row.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
                let mut z = 0.0;
                for j in 0..n {
                    let e = (row[j] - mx).exp();
                    o[i * n + j] = e;
                    z += e;
                }
                for j in 0..n {
                    o[i * n + j] /= z;
                }
            }
        }
        let needs = self.needs_grad(a);
        let out_id = self.nodes.len();
        self.push(
            out,
            needs,
            Some(Box::new(move |nodes: &[Node], g, grads| {
                if needs {
                    let y = nodes[out_id].value.data();
                    let gv = g.data();
                    let mut d = Tensor::zeros(&[m, n]);
                    let dv = d.data_mut();
                    for i in 0..m {
                        let yr = &y[i * n..(i + 1) * n];
                        let gr = &gv[i * n..(i + 1) * n];
                        let dot: f64 = yr.iter().zip(gr).map(|(&yv, &gvv)| yv * gvv).sum();
                        for j in 0..n {
                            dv[i * n + j] = yr[j] * (gr[j] - dot);
                        }
                    }
                    accumulate(&mut grads[a.0], d);
                }
            })),
        )
    }

    /// Layer normalization across the channel axis of a `(C, H, W)` tensor,
    /// independently at every spatial position; `gamma`/`beta` are per-channel.
    pub fn channel_layer_norm(&mut self, x: Var, gamma: Var, beta: Var) -> Var {
        let (c, h, w) = self.nodes[x.0].value.dims3();
        assert_eq!(self.nodes[gamma.0].value.shape(), &[c]);
        assert_eq!(self.nodes[beta.0].value.shape(), &[c]);
        let s = h * w;
        let mut out = Tensor::zeros(&[c, h, w]);
        // Cache per-position mean and inverse std for the backward pass.
        let mut mu = vec![0.0f64; s];
        let mut inv_std = vec![0.0f64; s];
        {
            let xv = self.nodes[x.0].value.data();
            let gv = self.nodes[gamma.0].value.data();
            let bv = self.nodes[beta.0].value.data();
            let o = out.data_mut();
            for p in 0..s {
                let mut m = 0.0;
                for ch in 0..c {
                    m += xv[ch * s + p];
                }
                m /= c as f64;
                let mut var = 0.0;
                for ch in 0..c {
                    let d = xv[ch * s + p] - m;
                    var += d * d;
                }
                var /= c as f64;
                let is = 1.0 / (var + LN_EPS).sqrt();
                mu[p] = m;
                inv_std[p] = is;
                for ch in 0..c {
                    o[ch * s + p] = (xv[ch * s + p] - m) * is * gv[ch] + bv[ch];
                }
            }
        }
        let (nx, ng, nb) = (self.needs_grad(x), self.needs_grad(gamma), self.needs_grad(beta));
        self.push(
            out,
            nx || ng || nb,
            Some(Box::new(move |nodes: &[Node], g, grads| {
                let xv = nodes[x.0].value.data();
                let gammav = nodes[gamma.0].value.data();
                let gv = g.data();
                if ng || nb {
                    let mut dgamma = Tensor::zeros(&[c]);
                    let mut dbeta = Tensor::zeros(&[c]);
                    for ch in 0..c {
                        let mut sg = 0.0;
                        let mut sb = 0.0;
                        for p in 0..s {
                            let xh = (xv[ch * s + p] - mu[p]) * inv_std[p];
                            sg += gv[ch * s + p] * xh;
                            sb += gv[ch * s + p];
                        }
                        dgamma.data_mut()[ch] = sg;
                        dbeta.data_mut()[ch] = sb;
                    }
                    if ng {
                        accumulate(&mut grads[gamma.0], dgamma);
                    }
                    if nb {
                        accumulate(&mut grads[beta.0], dbeta);
                    }
                }
                if nx {
                    let mut dx = Tensor::zeros(&[c, h, w]);
                    let dxv = dx.data_mut();
                    let cn = c as f64;
                    for p in 0..s {
                        // dxhat = g * gamma; dx via the standard layer-norm backward
                        let mut mean_dxh = 0.0;
                        let mut mean_dxh_xh = 0.0;
                        for ch in 0..c {
                            let dxh = gv[ch * s + p] * gammav[ch];
                            let xh = (xv[ch * s + p] - mu[p]) * inv_std[p];
                            mean_dxh += dxh;
                            mean_dxh_xh += dxh * xh;
                        }
                        mean_dxh /= cn;
                        mean_dxh_xh /= cn;
                        for ch in 0..c {
                            let dxh = gv[ch * s + p] * gammav[ch];
                            let xh = (xv[ch * s + p] - mu[p]) * inv_std[p];
                            dxv[ch * s + p] = inv_std[p] * (dxh - mean_dxh - xh * mean_dxh_xh);
                        }
                    }
                    accumulate(&mut grads[x.0], dx);
                }
            })),
        )
    }

    /// Per-channel scaling of a `(C, H, W)` tensor by a length-`C` vector.
    pub fn channel_scale(&mut self, x: Var, scale: Var) -> Var {
        let (c, h, w) = self.nodes[x.0].value.dims3();
        assert_eq!(self.nodes[scale.0].value.shape(), &[c]);
        let s = h * w;
        let mut out = self.nodes[x.0].value.clone();
        {
            let sv = self.nodes[scale.0].value.data();
            let o = out.data_mut();
            for ch in 0..c {
                let k = sv[ch];
                for v in &mut o[ch * s..(ch + 1) * s] {
                    *v *= k;
                }
            }
        }
        let (nx, ns) = (self.needs_grad(x), self.needs_grad(scale));
        self.push(
            out,
            nx || ns,
            Some(Box::new(move |nodes: &[Node], g, grads| {
                let gv = g.data();
                if nx {
                    let sv = nodes[scale.0].value.data();
                    let mut dx = g.clone();
                    let dxv = dx.data_mut();
                    for ch in 0..c {
                        let k = sv[ch];
                        for v in &mut dxv[ch * s..(ch + 1) * s] {
                            *v *= k;
                        }
                    }
                    accumulate(&mut grads[x.0], dx);
                }
                if ns {
                    let xv = nodes[x.0].value.data();
                    let mut ds = Tensor::zeros(&[c]);
                    for ch in 0..c {
                        let mut acc = 0.0;
                        for p in 0..s {
                            acc += gv[ch * s + p] * xv[ch * s + p];
                        }
                        ds.data_mut()[ch] = acc;
                    }
                    accumulate(&mut grads[scale.0], ds);
                }
            })),
        )
    }

    /// Concatenate along the first axis; remaining axes must agree.
    pub fn concat_dim0(&mut self, parts: &[Var]) -> Var {
        assert!(!parts.is_empty());
        let tail = self.nodes[parts[0].0].value.shape()[1..].to_vec();
        let mut dim0 = 0;
        for &p in parts {
            let sh = self.nodes[p.0].value.shape();
            assert_eq!(&sh[1..], &tail[..], "concat_dim0 trailing shape mismatch");
            dim0 += sh[0];
        }
        let mut shape = vec![dim0];
        shape.extend_from_slice(&tail);
        let mut data = Vec::with_capacity(shape.iter().product());
        for &p in parts {
            data.extend_from_slice(self.nodes[p.0].value.data());
        }
        let out = Tensor::from_vec(&shape, data);
        let needs = parts.iter().any(|&p| self.needs_grad(p));
        let metas: Vec<(usize, usize, Vec<usize>, bool)> = {
            let mut offset = 0usize;
            parts
                .iter()
                .map(|&p| {
                    let sh = self.nodes[p.0].value.shape().to_vec();
                    let len = self.nodes[p.0].value.len();
                    let m = (p.0, offset, sh, self.needs_grad(p));
                    offset += len;
                    m
                })
                .collect()
        };
        self.push(
            out,
            needs,
            Some(Box::new(move |_n, g, grads| {
                let gv = g.data();
                for (id, offset, shape, need) in &metas {
                    if !need {
                        continue;
                    }
                    let len: usize = shape.iter().product();
                    let part = Tensor::from_vec(shape, gv[*offset..offset + len].to_vec());
                    accumulate(&mut grads[*id], part);
                }
            })),
        )
    }

    /// Slice `[from, to)` along the first axis.
    pub fn slice_dim0(&mut self, x: Var, from: usize, to: usize) -> Var {
        let sh = self.nodes[x.0].value.shape().to_vec();
        assert!(from < to && to <= sh[0], "slice_dim0 out of range");
        let inner: usize = sh[1..].iter().product();
        let mut shape = sh.clone();
        shape[0] = to - from;
        let data = self.nodes[x.0].value.data()[from * inner..to * inner].to_vec();
        let out = Tensor::from_vec(&shape, data);
        let needs = self.needs_grad(x);
        self.push(
            out,
            needs,
            Some(Box::new(move |_n, g, grads| {
                if needs {
                    let mut dx = Tensor::zeros(&sh);
                    dx.data_mut()[from * inner..to * inner].copy_from_slice(g.data());
                    accumulate(&mut grads[x.0], dx);
                }
            })),
        )
    }

    /// Same data under a new shape.
    pub fn reshape(&mut self, x: Var, shape: &[usize]) -> Var {
        let out = self.nodes[x.0].value.reshaped(shape);
        let needs = self.needs_grad(x);
        let old_shape = self.nodes[x.0].value.shape().to_vec();
        self.push(
            out,
            needs,
            Some(Box::new(move |_n, g, grads| {
                if needs {
                    accumulate(&mut grads[x.0], g.reshaped(&old_shape));
                }
            })),
        )
    }
}
