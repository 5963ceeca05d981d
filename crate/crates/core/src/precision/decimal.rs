use super::mag;
use super::{BallError, BallReal};
use rug::float::Round;
use rug::Float;

fn well_formed(text: &str) -> bool {
    let b = text.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let int_start = i;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    let mut digits = i - int_start;
    if i < b.len() && b[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        digits += i - frac_start;
    }
    if digits == 0 {
        return false;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        let exp_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        if i == exp_start {
            return false;
        }
    }
    i == b.len()
}

/// Parse a signed decimal numeral into a ball that contains its exact value.
///
/// The midpoint is the correctly rounded value; the radius is zero when the
/// numeral is representable and one ulp otherwise.
pub fn ball_from_decimal(text: &str, prec: u32) -> Result<BallReal, BallError> {
    let trimmed = text.trim();
    if !well_formed(trimmed) {
        return Err(BallError::Parse(text.to_string()));
    }
    let parsed = Float::parse(trimmed).map_err(|_| BallError::Parse(text.to_string()))?;
    let (mid, ord) = Float::with_val_round(prec, parsed, Round::Nearest);
    if ord == std::cmp::Ordering::Equal {
        return Ok(BallReal::exact(mid));
    }
    // half an ulp is enough, one ulp is what we promise
    let ulp = {
        let mut u = mag::abs_up(&mid);
        u >>= prec - 1;
        u
    };
    Ok(BallReal::new(mid, &ulp))
}
