use super::gf256::Gf256;
use super::CodingError;

/// `r x k` Cauchy matrix `1 / (x_i + y_j)` over GF(2^8), with `x_i = i - 1`
/// and `y_j = k + j - 1`. Every square submatrix is invertible.
///
/// When `2k > 256` the column points move to `y_j = r + j - 1`, which
/// stays distinct from the row points as long as `k + r <= 256`.
pub fn mds_rows(k: usize, r: usize) -> Result<Vec<Vec<Gf256>>, CodingError> {
    if r > k {
        return Err(CodingError::TooManyRows { k, r });
    }
    if k > 255 || (r > 0 && k + r > 256) {
        return Err(CodingError::FieldTooSmall { k, r });
    }
    let y0 = if 2 * k <= 256 { k } else { r };
    Ok((0..r)
        .map(|i| {
            (0..k)
                .map(|j| (Gf256(i as u8) + Gf256((y0 + j) as u8)).inv().expect("distinct points"))
                .collect()
        })
        .collect())
}

/// Generator rows for one partial clique action clearing `k` packets in
/// `r = k - d` transmissions: the all-ones row when `r = 1`, otherwise
/// [`mds_rows`].
pub fn clique_rows(k: usize, r: usize) -> Result<Vec<Vec<Gf256>>, CodingError> {
    if r == 1 && k <= 255 {
        return Ok(vec![vec![Gf256::ONE; k]]);
    }
    mds_rows(k, r)
}
