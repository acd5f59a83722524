//! Domain types: frames, feature maps, frequency pyramids, motion fields.

use crate::error::{Error, Result};
use crate::tensor::Tensor;

/// An RGB frame: `(3, H, W)` values in `[0, 1]`, spatial dimensions
/// divisible by 8 so the three pyramid halvings are exact.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    pixels: Tensor,
}

impl Frame {
    pub fn new(pixels: Tensor) -> Result<Self> {
        let shape = pixels.shape();
        if shape.len() != 3 || shape[0] != 3 {
            return Err(Error::ShapeMismatch {
                expected: vec![3, 0, 0],
                got: shape.to_vec(),
            });
        }
        let (h, w) = (shape[1], shape[2]);
        if h == 0 || h % 8 != 0 {
            return Err(Error::DimensionNotDivisible { dim: "height", value: h, divisor: 8 });
        }
        if w == 0 || w % 8 != 0 {
            return Err(Error::DimensionNotDivisible { dim: "width", value: w, divisor: 8 });
        }
        if !pixels.all_finite() {
            return Err(Error::InvalidValue { field: "pixels", reason: "non-finite value".into() });
        }
        if pixels.data().iter().any(|&v| !(0.0..=1.0).contains(&v)) {
            return Err(Error::InvalidValue { field: "pixels", reason: "value outside [0, 1]".into() });
        }
        Ok(Self { pixels })
    }

    /// Clamp into `[0, 1]` first, then validate; used for model outputs.
    pub fn from_unclamped(pixels: Tensor) -> Result<Self> {
        Self::new(pixels.clamped(0.0, 1.0))
    }

    pub fn height(&self) -> usize {
        self.pixels.shape()[1]
    }

    pub fn width(&self) -> usize {
        self.pixels.shape()[2]
    }

    pub fn tensor(&self) -> &Tensor {
        &self.pixels
    }

    pub fn into_tensor(self) -> Tensor {
        self.pixels
    }

    /// Crop a `(size x size)` window at `(top, left)`; the window must lie
    /// inside the frame and `size` must keep the divisibility contract.
    pub fn crop(&self, top: usize, left: usize, size: usize) -> Result<Frame> {
        let (h, w) = (self.height(), self.width());
        if size % 8 != 0 {
            return Err(Error::DimensionNotDivisible { dim: "crop", value: size, divisor: 8 });
        }
        if top + size > h || left + size > w {
            return Err(Error::InvalidValue {
                field: "crop",
                reason: format!("window {}x{} at ({}, {}) exceeds {}x{}", size, size, top, left, h, w),
            });
        }
        let mut out = Tensor::zeros(&[3, size, size]);
        for c in 0..3 {
            for y in 0..size {
                for x in 0..size {
                    out.set3(c, y, x, self.pixels.at3(c, top + y, left + x));
                }
            }
        }
        Frame::new(out)
    }

    /// Luminance plane (Rec. 601 weights), used by displacement estimation.
    pub fn luminance(&self) -> Tensor {
        let (h, w) = (self.height(), self.width());
        let mut out = Tensor::zeros(&[h, w]);
        let d = self.pixels.data();
        let plane = h * w;
        for i in 0..plane {
            out.data_mut()[i] = 0.299 * d[i] + 0.587 * d[plane + i] + 0.114 * d[2 * plane + i];
        }
        out
    }
}

/// Scale of a feature map relative to the input frame (1/2, 1/4, 1/8, ...).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scale {
    pub down_factor: usize,
}

/// A feature map at some pyramid scale.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMap {
    pub values: Tensor,
    pub scale: Scale,
}

impl FeatureMap {
    pub fn channels(&self) -> usize {
        self.values.shape()[0]
    }
}

/// Decoupled per-frame features: one high-frequency band per level plus
/// the deepest low-frequency band. With the default three levels the
/// bands are `(C, H/2, W/2)`, `(2C, H/4, W/4)`, `(4C, H/8, W/8)` and the
/// low band matches the deepest high band's shape.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyPyramid {
    /// Shallow-to-deep high-frequency bands.
    pub highs: Vec<FeatureMap>,
    /// Deep low-frequency band.
    pub low: FeatureMap,
}

impl FrequencyPyramid {
    pub fn levels(&self) -> usize {
        self.highs.len()
    }
}

/// Inter-frame motion field: the element-wise difference of deep
/// low-frequency features, query minus reference.
#[derive(Clone, Debug, PartialEq)]
pub struct MotionField {
    pub delta: Tensor,
}

/// `query.low - reference.low`, checked for shape agreement.
pub fn motion_field(reference: &FrequencyPyramid, query: &FrequencyPyramid) -> Result<MotionField> {
    reference.low.values.check_same_shape(&query.low.values)?;
    let mut delta = query.low.values.clone();
    for (d, &r) in delta.data_mut().iter_mut().zip(reference.low.values.data()) {
        *d -= r;
    }
    Ok(MotionField { delta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_rejects_bad_dims() {
        let t = Tensor::zeros(&[3, 65, 64]);
        let err = Frame::new(t).unwrap_err();
        assert!(err.to_string().contains("not divisible by 8"));
    }

    #[test]
    fn frame_rejects_out_of_range() {
        let t = Tensor::filled(&[3, 8, 8], 1.5);
        assert!(Frame::new(t).is_err());
        let t = Tensor::filled(&[3, 8, 8], f64::NAN);
        assert!(Frame::new(t).is_err());
    }

    #[test]
    fn crop_respects_divisibility() {
        let f = Frame::new(Tensor::filled(&[3, 32, 32], 0.5)).unwrap();
        assert!(f.crop(0, 0, 16).is_ok());
        assert!(f.crop(0, 0, 12).is_err());
        assert!(f.crop(20, 0, 16).is_err());
    }
}
