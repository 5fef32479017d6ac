use serde::{Deserialize, Serialize};

/// Parameter envelope of the lossless expander block `GUV_{n,k}` with
/// `alpha = 1`, `epsilon = 1/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuvParams {
    pub n: u64,
    pub k: u64,
    pub lambda: u64,
    /// `lambda * (n k)^2`
    pub degree: u128,
    /// `degree^2 * K^2`
    pub m_bound: u128,
    /// `(K', ceil(degree * K' / 2))` for `K' = 1, 2, 4, .., K`.
    pub expansion_table: Vec<(u128, u128)>,
}

/// Arithmetic saturates at `u128::MAX`; desk-scale inputs never reach it.
pub fn guv_envelope(n: u64, k: u64, lambda: u64) -> GuvParams {
    let nk = (n as u128).saturating_mul(k as u128);
    let degree = (lambda as u128).saturating_mul(nk.saturating_mul(nk));
    let big_k = pow2(k);
    let m_bound = degree
        .saturating_mul(degree)
        .saturating_mul(big_k.saturating_mul(big_k));
    let expansion_table = (0..=k.min(126))
        .map(|j| {
            let kp = 1u128 << j;
            (kp, degree.saturating_mul(kp).div_ceil(2))
        })
        .collect();
    GuvParams {
        n,
        k,
        lambda,
        degree,
        m_bound,
        expansion_table,
    }
}

fn pow2(e: u64) -> u128 {
    if e >= 128 {
        u128::MAX
    } else {
        1u128 << e
    }
}

/// Parameter envelope of `F_k`: a `(K, 1/2)`-disperser on `{0,1}^{8k}`
/// replicated and merged down to `{0,1}^{k+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FkParams {
    pub k: u64,
    pub left_len: u64,
    pub right_len: u64,
    pub alpha: u64,
    /// Degree of the underlying disperser.
    pub disperser_degree: u64,
    /// `alpha * K * D / (8k)^3`, the disperser's right size.
    pub disperser_right: f64,
    /// `2 * ceil((8k)^3 / (alpha * D))`
    pub copies: u64,
    /// `copies * D`, the left degree after replication.
    pub degree_bound: u64,
}

pub fn fk_envelope(k: u64, alpha: u64, disperser_degree: u64) -> FkParams {
    let n = 8 * k;
    let n3 = n * n * n;
    let denom = alpha * disperser_degree;
    let copies = 2 * n3.div_ceil(denom);
    FkParams {
        k,
        left_len: n,
        right_len: k + 1,
        alpha,
        disperser_degree,
        disperser_right: alpha as f64 * 2f64.powi(k as i32) * disperser_degree as f64 / n3 as f64,
        copies,
        degree_bound: copies * disperser_degree,
    }
}

/// Right-side size of `G_k` when every block meets the expander envelope.
/// Sums that overflow `u128` are reported as `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RightSizeAudit {
    pub k: u64,
    pub lambda: u64,
    pub max_len: u64,
    /// `sum_{n=k}^{max_len} lambda^2 (n k)^4 K^2`
    pub block_sum: Option<u128>,
    /// `lambda^2 k^4 K^7`
    pub bound_k7: Option<u128>,
    /// `K^8`
    pub bound_k8: Option<u128>,
    pub within_k7: Option<bool>,
    /// `lambda^2 k^4 K^7 < K^8`, i.e. `lambda^2 k^4 < K`.
    pub k7_below_k8: bool,
}

pub fn gk_right_size_audit(k: u64, lambda: u64, max_len: u64) -> RightSizeAudit {
    let big_k = u32::try_from(k).ok().and_then(|e| 1u128.checked_shl(e));
    let l2 = (lambda as u128).saturating_mul(lambda as u128);
    let block_sum = big_k.and_then(|bk| {
        let k2 = bk.checked_mul(bk)?;
        (k..=max_len).try_fold(0u128, |acc, n| {
            let nk = (n as u128).checked_mul(k as u128)?;
            let term = l2.checked_mul(nk.checked_pow(4)?)?.checked_mul(k2)?;
            acc.checked_add(term)
        })
    });
    let bound_k7 = big_k.and_then(|bk| {
        l2.checked_mul((k as u128).checked_pow(4)?)?
            .checked_mul(bk.checked_pow(7)?)
    });
    let bound_k8 = big_k.and_then(|bk| bk.checked_pow(8));
    let k7_below_k8 = match big_k {
        Some(bk) => l2.saturating_mul((k as u128).saturating_pow(4)) < bk,
        None => true,
    };
    let within_k7 = match (block_sum, bound_k7) {
        (Some(s), Some(b)) => Some(s <= b),
        _ => None,
    };
    RightSizeAudit {
        k,
        lambda,
        max_len,
        block_sum,
        bound_k7,
        bound_k8,
        within_k7,
        k7_below_k8,
    }
}
