//! Convolution, pooling and sub-pixel rearrangement operations.
//!
//! All spatial convolutions use reflect padding (without edge repetition),
//! so constant inputs stay constant under averaging kernels and borders do
//! not leak zeros into the low-frequency band.

use super::{accumulate, Node, Tape, Var};
use crate::tensor::Tensor;

pub(crate) fn reflect_index(i: isize, n: usize) -> usize {
    debug_assert!(n >= 2);
    if i < 0 {
        (-i) as usize
    } else if i as usize >= n {
        2 * n - 2 - i as usize
    } else {
        i as usize
    }
}

/// Reflect-pad a `(C, H, W)` tensor by `p` on every spatial side.
pub(crate) fn pad_reflect(x: &Tensor, p: usize) -> Tensor {
    let (c, h, w) = x.dims3();
    assert!(p < h && p < w, "reflect pad {} too large for {}x{}", p, h, w);
    if p == 0 {
        return x.clone();
    }
    let (hp, wp) = (h + 2 * p, w + 2 * p);
    let mut out = Tensor::zeros(&[c, hp, wp]);
    let xv = x.data();
    let ov = out.data_mut();
    for ch in 0..c {
        for u in 0..hp {
            let sy = reflect_index(u as isize - p as isize, h);
            let src = &xv[(ch * h + sy) * w..(ch * h + sy + 1) * w];
            let dst = &mut ov[(ch * hp + u) * wp..(ch * hp + u + 1) * wp];
            for (v, d) in dst.iter_mut().enumerate() {
                let sx = reflect_index(v as isize - p as isize, w);
                *d = src[sx];
            }
        }
    }
    out
}

/// Fold a gradient over the padded tensor back onto the unpadded one,
/// accumulating the reflected border contributions.
pub(crate) fn fold_reflect(dxp: &Tensor, p: usize, h: usize, w: usize) -> Tensor {
    let (c, hp, wp) = dxp.dims3();
    assert_eq!(hp, h + 2 * p);
    assert_eq!(wp, w + 2 * p);
    let mut out = Tensor::zeros(&[c, h, w]);
    let gv = dxp.data();
    let ov = out.data_mut();
    for ch in 0..c {
        for u in 0..hp {
            let sy = reflect_index(u as isize - p as isize, h);
            for v in 0..wp {
                let sx = reflect_index(v as isize - p as isize, w);
                ov[(ch * h + sy) * w + sx] += gv[(ch * hp + u) * wp + v];
            }
        }
    }
    out
}

/// Dense 2-D convolution value (no tape), shared by the forward op and
/// no-grad callers. Weight layout `(Co, Ci, k, k)`, odd `k`, reflect pad.
pub(crate) fn conv2d_value(
    x: &Tensor,
    w: &Tensor,
    b: Option<&Tensor>,
    stride: usize,
    dilation: usize,
) -> Tensor {
    let (ci, h, width) = x.dims3();
    let ws = w.shape();
    assert_eq!(ws.len(), 4, "conv2d weight must be (Co, Ci, k, k)");
    let (co, wci, k) = (ws[0], ws[1], ws[2]);
    assert_eq!(ws[2], ws[3], "conv2d kernels are square");
    assert_eq!(wci, ci, "conv2d channel mismatch");
    assert_eq!(k % 2, 1, "conv2d kernel size must be odd");
    let p = (k - 1) * dilation / 2;
    let xp = pad_reflect(x, p);
    let (hp, wp) = (h + 2 * p, width + 2 * p);
    let span = (k - 1) * dilation + 1;
    let ho = (hp - span) / stride + 1;
    let wo = (wp - span) / stride + 1;
    let mut out = Tensor::zeros(&[co, ho, wo]);
    let xv = xp.data();
    let wv = w.data();
    let ov = out.data_mut();
    for o in 0..co {
        if let Some(bias) = b {
            let bv = bias.data()[o];
            for v in &mut ov[o * ho * wo..(o + 1) * ho * wo] {
                *v = bv;
            }
        }
        for i in 0..ci {
            for ky in 0..k {
                for kx in 0..k {
                    let wgt = wv[((o * ci + i) * k + ky) * k + kx];
                    if wgt == 0.0 {
                        continue;
                    }
                    for y in 0..ho {
                        let srow = (i * hp + y * stride + ky * dilation) * wp + kx * dilation;
                        let orow = (o * ho + y) * wo;
                        for xo in 0..wo {
                            ov[orow + xo] += wgt * xv[srow + xo * stride];
                        }
                    }
                }
            }
        }
    }
    out
}

/// Depth-wise convolution value: weight `(C, k, k)`, stride 1, reflect pad.
pub(crate) fn dwconv2d_value(x: &Tensor, w: &Tensor, b: Option<&Tensor>, dilation: usize) -> Tensor {
    let (c, h, width) = x.dims3();
    let ws = w.shape();
    assert_eq!(ws.len(), 3, "dwconv2d weight must be (C, k, k)");
    assert_eq!(ws[0], c, "dwconv2d channel mismatch");
    let k = ws[1];
    assert_eq!(ws[1], ws[2]);
    assert_eq!(k % 2, 1);
    let p = (k - 1) * dilation / 2;
    let xp = pad_reflect(x, p);
    let (hp, wp) = (h + 2 * p, width + 2 * p);
    let mut out = Tensor::zeros(&[c, h, width]);
    let xv = xp.data();
    let wv = w.data();
    let ov = out.data_mut();
    for ch in 0..c {
        if let Some(bias) = b {
            let bv = bias.data()[ch];
            for v in &mut ov[ch * h * width..(ch + 1) * h * width] {
                *v = bv;
            }
        }
        for ky in 0..k {
            for kx in 0..k {
                let wgt = wv[(ch * k + ky) * k + kx];
                if wgt == 0.0 {
                    continue;
                }
                for y in 0..h {
                    let srow = (ch * hp + y + ky * dilation) * wp + kx * dilation;
                    let orow = (ch * h + y) * width;
                    for xo in 0..width {
                        ov[orow + xo] += wgt * xv[srow + xo];
                    }
                }
            }
        }
    }
    out
}

impl Tape {
    /// Dense convolution with reflect padding. `stride` 1 preserves the
    /// spatial size; `stride` 2 halves it (even inputs).
    pub fn conv2d(&mut self, x: Var, w: Var, b: Option<Var>, stride: usize, dilation: usize) -> Var {
        let out = conv2d_value(
            &self.nodes[x.0].value,
            &self.nodes[w.0].value,
            b.map(|bb| &self.nodes[bb.0].value),
            stride,
            dilation,
        );
        let (ci, h, width) = self.nodes[x.0].value.dims3();
        let ws = self.nodes[w.0].value.shape().to_vec();
        let (co, k) = (ws[0], ws[2]);
        let p = (k - 1) * dilation / 2;
        let (ho, wo) = (out.shape()[1], out.shape()[2]);
        let (nx, nw) = (self.needs_grad(x), self.needs_grad(w));
        let nb = b.map(|bb| self.needs_grad(bb)).unwrap_or(false);
        let needs = nx || nw || nb;
        self.push(
            out,
            needs,
            Some(Box::new(move |nodes: &[Node], g, grads| {
                let gv = g.data();
                if nb {
                    let bid = b.unwrap().0;
                    let mut db = Tensor::zeros(&[co]);
                    for o in 0..co {
                        db.data_mut()[o] = gv[o * ho * wo..(o + 1) * ho * wo].iter().sum();
                    }
                    accumulate(&mut grads[bid], db);
                }
                if !(nx || nw) {
                    return;
                }
                let xp = pad_reflect(&nodes[x.0].value, p);
                let (hp, wp) = (h + 2 * p, width + 2 * p);
                let xv = xp.data();
                if nw {
                    let mut dw = Tensor::zeros(&ws);
                    let dwv = dw.data_mut();
                    for o in 0..co {
                        for i in 0..ci {
                            for ky in 0..k {
                                for kx in 0..k {
                                    let mut acc = 0.0;
                                    for y in 0..ho {
                                        let srow =
                                            (i * hp + y * stride + ky * dilation) * wp + kx * dilation;
                                        let grow = (o * ho + y) * wo;
                                        for xo in 0..wo {
                                            acc += gv[grow + xo] * xv[srow + xo * stride];
                                        }
                                    }
                                    dwv[((o * ci + i) * k + ky) * k + kx] = acc;
                                }
                            }
                        }
                    }
                    accumulate(&mut grads[w.0], dw);
                }
                if nx {
                    let wv = nodes[w.0].value.data();
                    let mut dxp = Tensor::zeros(&[ci, hp, wp]);
                    let dv = dxp.data_mut();
                    for o in 0..co {
                        for i in 0..ci {
                            for ky in 0..k {
                                for kx in 0..k {
                                    let wgt = wv[((o * ci + i) * k + ky) * k + kx];
                                    if wgt == 0.0 {
                                        continue;
                                    }
                                    for y in 0..ho {
                                        let srow =
                                            (i * hp + y * stride + ky * dilation) * wp + kx * dilation;
                                        let grow = (o * ho + y) * wo;
                                        for xo in 0..wo {
                                            dv[srow + xo * stride] += wgt * gv[grow + xo];
                                        }
                                    }
                                }
                            }
                        }
                    }
                    accumulate(&mut grads[x.0], fold_reflect(&dxp, p, h, width));
                }
            })),
        )
    }

    /// Point-wise convolution; weight layout `(Co, Ci)`.
    pub fn conv1x1(&mut self, x: Var, w: Var, b: Option<Var>) -> Var {
        let (ci, h, width) = self.nodes[x.0].value.dims3();
        let (co, wci) = self.nodes[w.0].value.dims2();
        assert_eq!(wci, ci, "conv1x1 channel mismatch");
        let s = h * width;
        let mut out = Tensor::zeros(&[co, h, width]);
        {
            let xv = self.nodes[x.0].value.data();
            let wv = self.nodes[w.0].value.data();
            let ov = out.data_mut();
            for o in 0..co {
                let orow = &mut ov[o * s..(o + 1) * s];
                if let Some(bb) = b {
                    let bv = self.nodes[bb.0].value.data()[o];
                    for v in orow.iter_mut() {
                        *v = bv;
                    }
                }
                for i in 0..ci {
                    let k = wv[o * ci + i];
                    if k == 0.0 {
                        continue;
                    }
                    let xrow = &xv[i * s..(i + 1) * s];
                    for (ov, &xv) in orow.iter_mut().zip(xrow) {
                        *ov += k * xv;
                    }
                }
            }
        }
        let (nx, nw) = (self.needs_grad(x), self.needs_grad(w));
        let nb = b.map(|bb| self.needs_grad(bb)).unwrap_or(false);
        self.push(
            out,
            nx || nw || nb,
            Some(Box::new(move |nodes: &[Node], g, grads| {
                let gv = g.data();
                if nb {
                    let bid = b.unwrap().0;
                    let mut db = Tensor::zeros(&[co]);
                    for o in 0..co {
                        db.data_mut()[o] = gv[o * s..(o + 1) * s].iter().sum();
                    }
                    accumulate(&mut grads[bid], db);
                }
                if nw {
                    let xv = nodes[x.0].value.data();
                    let mut dw = Tensor::zeros(&[co, ci]);
                    let dwv = dw.data_mut();
                    for o in 0..co {
                        let grow = &gv[o * s..(o + 1) * s];
                        for i in 0..ci {
                            let xrow = &xv[i * s..(i + 1) * s];
                            let mut acc = 0.0;
                            for (gg, xx) in grow.iter().zip(xrow) {
                                acc += gg * xx;
                            }
                            dwv[o * ci + i] = acc;
                        }
                    }
                    accumulate(&mut grads[w.0], dw);
                }
                if nx {
                    let wv = nodes[w.0].value.data();
                    let mut dx = Tensor::zeros(&[ci, h, width]);
                    let dxv = dx.data_mut();
                    for o in 0..co {
                        let grow = &gv[o * s..(o + 1) * s];
                        for i in 0..ci {
                            let k = wv[o * ci + i];
                            if k == 0.0 {
                                continue;
                            }
                            let drow = &mut dxv[i * s..(i + 1) * s];
                            for (dd, gg) in drow.iter_mut().zip(grow) {
                                *dd += k * gg;
                            }
                        }
                    }
                    accumulate(&mut grads[x.0], dx);
                }
            })),
        )
    }

    /// Depth-wise convolution; weight layout `(C, k, k)`, stride 1.
    pub fn dwconv2d(&mut self, x: Var, w: Var, b: Option<Var>, dilation: usize) -> Var {
        let out = dwconv2d_value(
            &self.nodes[x.0].value,
            &self.nodes[w.0].value,
            b.map(|bb| &self.nodes[bb.0].value),
            dilation,
        );
        let (c, h, width) = self.nodes[x.0].value.dims3();
        let k = self.nodes[w.0].value.shape()[1];
        let p = (k - 1) * dilation / 2;
        let (nx, nw) = (self.needs_grad(x), self.needs_grad(w));
        let nb = b.map(|bb| self.needs_grad(bb)).unwrap_or(false);
        self.push(
            out,
            nx || nw || nb,
            Some(Box::new(move |nodes: &[Node], g, grads| {
                let gv = g.data();
                let s = h * width;
                if nb {
                    let bid = b.unwrap().0;
                    let mut db = Tensor::zeros(&[c]);
                    for ch in 0..c {
                        db.data_mut()[ch] = gv[ch * s..(ch + 1) * s].iter().sum();
                    }
                    accumulate(&mut grads[bid], db);
                }
                if !(nx || nw) {
                    return;
                }
                let xp = pad_reflect(&nodes[x.0].value, p);
                let (hp, wp) = (h + 2 * p, width + 2 * p);
                let xv = xp.data();
                if nw {
                    let mut dw = Tensor::zeros(&[c, k, k]);
                    let dwv = dw.data_mut();
                    for ch in 0..c {
                        for ky in 0..k {
                            for kx in 0..k {
                                let mut acc = 0.0;
                                for y in 0..h {
                                    let srow = (ch * hp + y + ky * dilation) * wp + kx * dilation;
                                    let grow = (ch * h + y) * width;
                                    for xo in 0..width {
                                        acc += gv[grow + xo] * xv[srow + xo];
                                    }
                                }
                                dwv[(ch * k + ky) * k + kx] = acc;
                            }
                        }
                    }
                    accumulate(&mut grads[w.0], dw);
                }
                if nx {
                    let wv = nodes[w.0].value.data();
                    let mut dxp = Tensor::zeros(&[c, hp, wp]);
                    let dv = dxp.data_mut();
                    for ch in 0..c {
                        for ky in 0..k {
                            for kx in 0..k {
                                let wgt = wv[(ch * k + ky) * k + kx];
                                if wgt == 0.0 {
                                    continue;
                                }
                                for y in 0..h {
                                    let srow = (ch * hp + y + ky * dilation) * wp + kx * dilation;
                                    let grow = (ch * h + y) * width;
                                    for xo in 0..width {
                                        dv[srow + xo] += wgt * gv[grow + xo];
                                    }
                                }
                            }
                        }
                    }
                    accumulate(&mut grads[x.0], fold_reflect(&dxp, p, h, width));
                }
            })),
        )
    }

    /// 3x3 average pooling, stride 1, reflect padding; spatial shape kept.
    pub fn avg_pool3(&mut self, x: Var) -> Var {
        let (c, h, w) = self.nodes[x.0].value.dims3();
        let xp = pad_reflect(&self.nodes[x.0].value, 1);
        let (hp, wp) = (h + 2, w + 2);
        let mut out = Tensor::zeros(&[c, h, w]);
        {
            let xv = xp.data();
            let ov = out.data_mut();
            for ch in 0..c {
                for y in 0..h {
                    for xo in 0..w {
                        let mut acc = 0.0;
                        for ky in 0..3 {
                            let row = (ch * hp + y + ky) * wp + xo;
                            acc += xv[row] + xv[row + 1] + xv[row + 2];
                        }
                        ov[(ch * h + y) * w + xo] = acc / 9.0;
                    }
                }
            }
        }
        let needs = self.needs_grad(x);
        self.push(
            out,
            needs,
            Some(Box::new(move |_n, g, grads| {
                if needs {
                    let gv = g.data();
                    let mut dxp = Tensor::zeros(&[c, hp, wp]);
                    let dv = dxp.data_mut();
                    for ch in 0..c {
                        for y in 0..h {
                            for xo in 0..w {
                                let gg = gv[(ch * h + y) * w + xo] / 9.0;
                                for ky in 0..3 {
                                    let row = (ch * hp + y + ky) * wp + xo;
                                    dv[row] += gg;
                                    dv[row + 1] += gg;
                                    dv[row + 2] += gg;
                                }
                            }
                        }
                    }
                    accumulate(&mut grads[x.0], fold_reflect(&dxp, 1, h, w));
                }
            })),
        )
    }

    /// 3x3 max pooling, stride 1, reflect padding; spatial shape kept.
    pub fn max_pool3(&mut self, x: Var) -> Var {
        let (c, h, w) = self.nodes[x.0].value.dims3();
        let xp = pad_reflect(&self.nodes[x.0].value, 1);
        let (hp, wp) = (h + 2, w + 2);
        let mut out = Tensor::zeros(&[c, h, w]);
        let mut argmax = vec![0u32; c * h * w];
        {
            let xv = xp.data();
            let ov = out.data_mut();
            for ch in 0..c {
                for y in 0..h {
                    for xo in 0..w {
                        let mut best = f64::NEG_INFINITY;
                        let mut best_idx = 0usize;
                        for ky in 0..3 {
                            let row = (ch * hp + y + ky) * wp + xo;
                            for kx in 0..3 {
                                let v = xv[row + kx];
                                if v > best {
                                    best = v;
                                    best_idx = row + kx;
                                }
                            }
                        }
                        ov[(ch * h + y) * w + xo] = best;
                        argmax[(ch * h + y) * w + xo] = best_idx as u32;
                    }
                }
            }
        }
        let needs = self.needs_grad(x);
        self.push(
            out,
            needs,
            Some(Box::new(move |_n, g, grads| {
                if needs {
                    let gv = g.data();
                    let mut dxp = Tensor::zeros(&[c, hp, wp]);
                    let dv = dxp.data_mut();
                    for (i, &idx) in argmax.iter().enumerate() {
                        dv[idx as usize] += gv[i];
                    }
                    accumulate(&mut grads[x.0], fold_reflect(&dxp, 1, h, w));
                }
            })),
        )
    }

    /// 2x2 max pooling with stride 2 (used by the external conv-stack
    /// perceptual adapter). Requires even spatial dimensions.
    pub fn max_pool2(&mut self, x: Var) -> Var {
        let (c, h, w) = self.nodes[x.0].value.dims3();
        assert!(h % 2 == 0 && w % 2 == 0, "max_pool2 requires even dimensions");
        let (ho, wo) = (h / 2, w / 2);
        let mut out = Tensor::zeros(&[c, ho, wo]);
        let mut argmax = vec![0u32; c * ho * wo];
        {
            let xv = self.nodes[x.0].value.data();
            let ov = out.data_mut();
            for ch in 0..c {
                for y in 0..ho {
                    for xo in 0..wo {
                        let mut best = f64::NEG_INFINITY;
                        let mut best_idx = 0usize;
                        for ky in 0..2 {
                            for kx in 0..2 {
                                let idx = (ch * h + 2 * y + ky) * w + 2 * xo + kx;
                                if xv[idx] > best {
                                    best = xv[idx];
                                    best_idx = idx;
                                }
                            }
                        }
                        ov[(ch * ho + y) * wo + xo] = best;
                        argmax[(ch * ho + y) * wo + xo] = best_idx as u32;
                    }
                }
            }
        }
        let needs = self.needs_grad(x);
        self.push(
            out,
            needs,
            Some(Box::new(move |_n, g, grads| {
                if needs {
                    let mut dx = Tensor::zeros(&[c, h, w]);
                    let dv = dx.data_mut();
                    for (i, &idx) in argmax.iter().enumerate() {
                        dv[idx as usize] += g.data()[i];
                    }
                    accumulate(&mut grads[x.0], dx);
                }
            })),
        )
    }

    /// Sub-pixel rearrangement `(4k, h, w) -> (k, 2h, 2w)`.
    pub fn pixel_shuffle2(&mut self, x: Var) -> Var {
        let out = pixel_shuffle2_value(&self.nodes[x.0].value);
        let (c4, h, w) = self.nodes[x.0].value.dims3();
        let needs = self.needs_grad(x);
        self.push(
            out,
            needs,
            Some(Box::new(move |_n, g, grads| {
                if needs {
                    let k = c4 / 4;
                    let gv = g.data();
                    let mut dx = Tensor::zeros(&[c4, h, w]);
                    let dv = dx.data_mut();
                    let (ho, wo) = (2 * h, 2 * w);
                    for c in 0..k {
                        for dy in 0..2 {
                            for dx_ in 0..2 {
                                let ci = 4 * c + 2 * dy + dx_;
                                for y in 0..h {
                                    for xo in 0..w {
                                        dv[(ci * h + y) * w + xo] =
                                            gv[(c * ho + 2 * y + dy) * wo + 2 * xo + dx_];
                                    }
                                }
                            }
                        }
                    }
                    accumulate(&mut grads[x.0], dx);
                }
            })),
        )
    }
}

/// Pure sub-pixel shuffle on a tensor, `(4k, h, w) -> (k, 2h, 2w)`.
pub fn pixel_shuffle2_value(x: &Tensor) -> Tensor {
    let (c4, h, w) = x.dims3();
    assert_eq!(c4 % 4, 0, "pixel shuffle requires channels divisible by 4");
    let k = c4 / 4;
    let (ho, wo) = (2 * h, 2 * w);
    let mut out = Tensor::zeros(&[k, ho, wo]);
    let xv = x.data();
    let ov = out.data_mut();
    for c in 0..k {
        for dy in 0..2 {
            for dx in 0..2 {
                let ci = 4 * c + 2 * dy + dx;
                for y in 0..h {
                    for xo in 0..w {
                        ov[(c * ho + 2 * y + dy) * wo + 2 * xo + dx] = xv[(ci * h + y) * w + xo];
                    }
                }
            }
        }
    }
    out
}
