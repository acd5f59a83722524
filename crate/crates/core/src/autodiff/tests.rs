//! Gradient checks for every tape operation against central finite
//! differences, plus forward-value sanity tests.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::conv::{pad_reflect, pixel_shuffle2_value};
use super::*;
use crate::tensor::Tensor;

const FD_EPS: f64 = 1e-5;
const TOL: f64 = 1e-6;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-6)
}

/// Build the graph twice per perturbed element and compare the analytic
/// gradient of the scalar root with a central finite difference.
fn check_grads(leaves: &[Tensor], build: impl Fn(&mut Tape, &[Var]) -> Var, tol: f64) {
    let eval = |tensors: &[Tensor]| -> f64 {
        let mut tape = Tape::new();
        let vars: Vec<Var> = tensors.iter().map(|t| tape.leaf(t.clone(), true)).collect();
        let root = build(&mut tape, &vars);
        tape.value(root).item()
    };

    let mut tape = Tape::new();
    let vars: Vec<Var> = leaves.iter().map(|t| tape.leaf(t.clone(), true)).collect();
    let root = build(&mut tape, &vars);
    let grads = tape.backward(root);

    for (li, leaf) in leaves.iter().enumerate() {
        let analytic = grads.get_or_zeros(vars[li], leaf.shape());
        for ei in 0..leaf.len() {
            let mut plus = leaves.to_vec();
            plus[li].data_mut()[ei] += FD_EPS;
            let mut minus = leaves.to_vec();
            minus[li].data_mut()[ei] -= FD_EPS;
            let fd = (eval(&plus) - eval(&minus)) / (2.0 * FD_EPS);
            let an = analytic.data()[ei];
            assert!(
                rel_err(an, fd) < tol,
                "leaf {} elem {}: analytic {} vs fd {}",
                li,
                ei,
                an,
                fd
            );
        }
    }
}

#[test]
fn grad_elementwise_chain() {
    let mut r = rng(1);
    let a = Tensor::rand_normal(&[2, 3], 0.0, 1.0, &mut r);
    let b = Tensor::rand_normal(&[2, 3], 0.0, 1.0, &mut r);
    check_grads(&[a, b], |t, v| {
        let s = t.add(v[0], v[1]);
        let d = t.sub(s, v[1]);
        let m = t.mul(d, v[0]);
        let sc = t.scale(m, 0.7);
        let sh = t.add_scalar(sc, 0.3);
        t.mean_all(sh)
    }, 1e-6);
}

#[test]
fn grad_div() {
    let mut r = rng(2);
    let a = Tensor::rand_normal(&[5], 0.0, 1.0, &mut r);
    let b = Tensor::rand_uniform(&[5], 0.5, 2.0, &mut r);
    check_grads(&[a, b], |t, v| {
        let d = t.div(v[0], v[1]);
        t.mean_all(d)
    }, 1e-6);
}

#[test]
fn grad_activations() {
    let mut r = rng(3);
    let a = Tensor::rand_normal(&[4, 4], 0.0, 2.0, &mut r);
    check_grads(&[a.clone()], |t, v| {
        let g = t.gelu(v[0]);
        t.mean_all(g)
    }, 1e-6);
    check_grads(&[a.clone()], |t, v| {
        let g = t.relu(v[0]);
        t.mean_all(g)
    }, 1e-5);
    check_grads(&[a.clone()], |t, v| {
        let g = t.softplus(v[0]);
        t.mean_all(g)
    }, 1e-6);
    check_grads(&[a], |t, v| {
        let g = t.square(v[0]);
        t.mean_all(g)
    }, 1e-6);
}

#[test]
fn grad_sqrt_positive() {
    let mut r = rng(4);
    let a = Tensor::rand_uniform(&[6], 0.5, 3.0, &mut r);
    check_grads(&[a], |t, v| {
        let g = t.sqrt(v[0]);
        t.mean_all(g)
    }, 1e-6);
}

#[test]
fn grad_div_scalar_var() {
    let mut r = rng(5);
    let a = Tensor::rand_normal(&[3, 3], 0.0, 1.0, &mut r);
    let s = Tensor::scalar(1.7);
    check_grads(&[a, s], |t, v| {
        let d = t.div_scalar_var(v[0], v[1]);
        let sq = t.square(d);
        t.mean_all(sq)
    }, 1e-6);
}

#[test]
fn grad_matmul_both_orientations() {
    let mut r = rng(6);
    let a = Tensor::rand_normal(&[3, 4], 0.0, 1.0, &mut r);
    let b = Tensor::rand_normal(&[4, 2], 0.0, 1.0, &mut r);
    check_grads(&[a, b], |t, v| {
        let m = t.matmul(v[0], v[1]);
        let s = t.square(m);
        t.mean_all(s)
    }, 1e-6);

    let a = Tensor::rand_normal(&[3, 5], 0.0, 1.0, &mut r);
    let b = Tensor::rand_normal(&[4, 5], 0.0, 1.0, &mut r);
    check_grads(&[a, b], |t, v| {
        let m = t.matmul_nt(v[0], v[1]);
        let s = t.square(m);
        t.mean_all(s)
    }, 1e-6);
}

#[test]
fn grad_softmax_rows() {
    let mut r = rng(7);
    let a = Tensor::rand_normal(&[3, 4], 0.0, 2.0, &mut r);
    check_grads(&[a.clone()], |t, v| {
        let sm = t.softmax_rows(v[0]);
        let sq = t.square(sm);
        t.mean_all(sq)
    }, 1e-5);

    // Rows sum to one.
    let mut tape = Tape::new();
    let v = tape.constant(a);
    let sm = tape.softmax_rows(v);
    let y = tape.value(sm);
    for i in 0..3 {
        let s: f64 = y.data()[i * 4..(i + 1) * 4].iter().sum();
        assert!((s - 1.0).abs() < 1e-12);
    }
}

#[test]
fn grad_channel_layer_norm() {
    let mut r = rng(8);
    let x = Tensor::rand_normal(&[4, 3, 2], 0.0, 1.0, &mut r);
    let gamma = Tensor::rand_uniform(&[4], 0.5, 1.5, &mut r);
    let beta = Tensor::rand_normal(&[4], 0.0, 0.2, &mut r);
    check_grads(&[x, gamma, beta], |t, v| {
        let y = t.channel_layer_norm(v[0], v[1], v[2]);
        let sq = t.square(y);
        t.mean_all(sq)
    }, 1e-5);
}

#[test]
fn grad_channel_scale() {
    let mut r = rng(9);
    let x = Tensor::rand_normal(&[3, 2, 2], 0.0, 1.0, &mut r);
    let s = Tensor::rand_uniform(&[3], 0.5, 1.5, &mut r);
    check_grads(&[x, s], |t, v| {
        let y = t.channel_scale(v[0], v[1]);
        t.mean_all(y)
    }, 1e-6);
}

#[test]
fn grad_conv2d_stride1() {
    let mut r = rng(10);
    let x = Tensor::rand_normal(&[2, 6, 5], 0.0, 1.0, &mut r);
    let w = Tensor::rand_normal(&[3, 2, 3, 3], 0.0, 0.5, &mut r);
    let b = Tensor::rand_normal(&[3], 0.0, 0.2, &mut r);
    check_grads(&[x, w, b], |t, v| {
        let y = t.conv2d(v[0], v[1], Some(v[2]), 1, 1);
        let sq = t.square(y);
        t.mean_all(sq)
    }, 1e-5);
}

#[test]
fn grad_conv2d_stride2_dilated() {
    let mut r = rng(11);
    let x = Tensor::rand_normal(&[2, 6, 6], 0.0, 1.0, &mut r);
    let w = Tensor::rand_normal(&[4, 2, 3, 3], 0.0, 0.5, &mut r);
    let b = Tensor::rand_normal(&[4], 0.0, 0.2, &mut r);
    check_grads(&[x.clone(), w, b.clone()], |t, v| {
        let y = t.conv2d(v[0], v[1], Some(v[2]), 2, 1);
        let sq = t.square(y);
        t.mean_all(sq)
    }, 1e-5);

    let w2 = Tensor::rand_normal(&[2, 2, 3, 3], 0.0, 0.5, &mut r);
    let b2 = Tensor::rand_normal(&[2], 0.0, 0.2, &mut r);
    check_grads(&[x, w2, b2], |t, v| {
        let y = t.conv2d(v[0], v[1], Some(v[2]), 1, 2);
        let sq = t.square(y);
        t.mean_all(sq)
    }, 1e-5);
}

#[test]
fn grad_conv1x1() {
    let mut r = rng(12);
    let x = Tensor::rand_normal(&[3, 4, 4], 0.0, 1.0, &mut r);
    let w = Tensor::rand_normal(&[5, 3], 0.0, 0.5, &mut r);
    let b = Tensor::rand_normal(&[5], 0.0, 0.2, &mut r);
    check_grads(&[x, w, b], |t, v| {
        let y = t.conv1x1(v[0], v[1], Some(v[2]));
        let sq = t.square(y);
        t.mean_all(sq)
    }, 1e-5);
}

#[test]
fn grad_dwconv2d() {
    let mut r = rng(13);
    let x = Tensor::rand_normal(&[3, 5, 6], 0.0, 1.0, &mut r);
    let w = Tensor::rand_normal(&[3, 3, 3], 0.0, 0.5, &mut r);
    let b = Tensor::rand_normal(&[3], 0.0, 0.2, &mut r);
    check_grads(&[x, w, b], |t, v| {
        let y = t.dwconv2d(v[0], v[1], Some(v[2]), 1);
        let sq = t.square(y);
        t.mean_all(sq)
    }, 1e-5);
}

#[test]
fn grad_dwconv2d_k7() {
    let mut r = rng(14);
    let x = Tensor::rand_normal(&[1, 9, 8], 0.0, 1.0, &mut r);
    let w = Tensor::rand_normal(&[1, 7, 7], 0.0, 0.3, &mut r);
    check_grads(&[x, w], |t, v| {
        let y = t.dwconv2d(v[0], v[1], None, 1);
        let sq = t.square(y);
        t.mean_all(sq)
    }, 1e-5);
}

#[test]
fn grad_pools() {
    let mut r = rng(15);
    let x = Tensor::rand_normal(&[2, 5, 4], 0.0, 1.0, &mut r);
    check_grads(&[x.clone()], |t, v| {
        let y = t.avg_pool3(v[0]);
        let sq = t.square(y);
        t.mean_all(sq)
    }, 1e-5);
    check_grads(&[x], |t, v| {
        let y = t.max_pool3(v[0]);
        let sq = t.square(y);
        t.mean_all(sq)
    }, 1e-5);

    let x2 = Tensor::rand_normal(&[2, 4, 6], 0.0, 1.0, &mut rng(16));
    check_grads(&[x2], |t, v| {
        let y = t.max_pool2(v[0]);
        let sq = t.square(y);
        t.mean_all(sq)
    }, 1e-5);
}

#[test]
fn grad_shuffle_concat_slice_reshape() {
    let mut r = rng(17);
    let x = Tensor::rand_normal(&[8, 3, 2], 0.0, 1.0, &mut r);
    check_grads(&[x], |t, v| {
        let y = t.pixel_shuffle2(v[0]);
        let sq = t.square(y);
        t.mean_all(sq)
    }, 1e-6);

    let a = Tensor::rand_normal(&[2, 3], 0.0, 1.0, &mut r);
    let b = Tensor::rand_normal(&[3, 3], 0.0, 1.0, &mut r);
    check_grads(&[a, b], |t, v| {
        let c = t.concat_dim0(&[v[0], v[1]]);
        let s = t.slice_dim0(c, 1, 4);
        let rsh = t.reshape(s, &[9]);
        let sq = t.square(rsh);
        t.mean_all(sq)
    }, 1e-6);
}

#[test]
fn pixel_shuffle_is_a_permutation() {
    let mut r = rng(18);
    let x = Tensor::rand_normal(&[24, 8, 8], 0.0, 1.0, &mut r);
    let y = pixel_shuffle2_value(&x);
    assert_eq!(y.shape(), &[6, 16, 16]);
    let mut a: Vec<f64> = x.data().to_vec();
    let mut b: Vec<f64> = y.data().to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    assert_eq!(a, b);
}

#[test]
fn reflect_pad_preserves_constants() {
    let x = Tensor::filled(&[1, 4, 4], 0.37);
    let p = pad_reflect(&x, 2);
    assert!(p.data().iter().all(|&v| v == 0.37));
}

#[test]
fn conv_identity_kernel_is_identity() {
    let mut r = rng(19);
    let x = Tensor::rand_normal(&[2, 5, 5], 0.0, 1.0, &mut r);
    // Center-tap identity kernel per channel pair.
    let mut w = Tensor::zeros(&[2, 2, 3, 3]);
    for c in 0..2 {
        let idx = ((c * 2 + c) * 3 + 1) * 3 + 1;
        w.data_mut()[idx] = 1.0;
    }
    let mut tape = Tape::new();
    let xv = tape.constant(x.clone());
    let wv = tape.constant(w);
    let y = tape.conv2d(xv, wv, None, 1, 1);
    assert_eq!(tape.value(y).data(), x.data());
}

#[test]
fn backward_frees_interior_keeps_leaves() {
    let mut tape = Tape::new();
    let a = tape.leaf(Tensor::scalar(2.0), true);
    let b = tape.square(a);
    let c = tape.square(b);
    let grads = tape.backward(c);
    assert!(grads.get(a).is_some());
    assert!(grads.get(b).is_none());
    assert_eq!(grads.get(a).unwrap().item(), 32.0); // d(a^4)/da = 4a^3
}

#[test]
fn residual_reuse_accumulates() {
    let mut tape = Tape::new();
    let a = tape.leaf(Tensor::scalar(3.0), true);
    let b = tape.square(a);
    let c = tape.add(a, b); // a + a^2
    let grads = tape.backward(c);
    assert_eq!(grads.get(a).unwrap().item(), 7.0); // 1 + 2a
}

#[test]
fn no_grad_leaves_receive_nothing() {
    let mut tape = Tape::new();
    let a = tape.leaf(Tensor::scalar(2.0), false);
    let b = tape.square(a);
    let grads = tape.backward(b);
    assert!(grads.get(a).is_none());
}

// TOL is the generic elementwise tolerance; looser bounds above cover ops
// whose finite differences accumulate more rounding.
#[test]
fn tolerances_are_consistent() {
    assert!(TOL <= 1e-5);
}
