//! Table rendering helpers: complex values as `a+bi` with 12 significant
//! digits, padded columns, byte-stable output.

use num_complex::Complex64;

/// Format a real number to 12 significant digits, trimming trailing zeros.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let s = format!("{:.11e}", x);
    // split mantissa / exponent
    let (mant, exp) = s.split_once('e').expect("exponent in scientific form");
    let exp: i32 = exp.parse().expect("numeric exponent");
    let mant = mant.trim_end_matches('0').trim_end_matches('.');
    if (-4..=14).contains(&exp) {
        // positional rendering
        let neg = mant.starts_with('-');
        let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        let point = exp + 1; // digits before the decimal point
        if point <= 0 {
            out.push_str("0.");
            for _ in 0..(-point) {
                out.push('0');
            }
            out.push_str(&digits);
        } else if (point as usize) >= digits.len() {
            out.push_str(&digits);
            for _ in 0..(point as usize - digits.len()) {
                out.push('0');
            }
        } else {
            out.push_str(&digits[..point as usize]);
            out.push('.');
            out.push_str(&digits[point as usize..]);
        }
        out
    } else {
        format!("{mant}e{exp}")
    }
}

/// `a+bi` with 12 significant digits; pure-real and pure-imaginary values
/// collapse to the shorter form.
pub fn fmt_complex(z: Complex64) -> String {
    let re = fmt_sig(z.re);
    let im = fmt_sig(z.im);
    if z.im == 0.0 {
        return re;
    }
    if z.re == 0.0 {
        return format!("{im}i");
    }
    if z.im < 0.0 {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

/// Render rows as a padded table with a header.
pub fn render_table(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width = vec![0usize; cols];
    for (i, h) in header.iter().enumerate() {
        width[i] = width[i].max(h.len());
    }
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            width[i] = width[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let fmt_row = |cells: &[String], width: &[usize]| -> String {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{:<w$}", cell, w = width[i]));
        }
        line.trim_end().to_string()
    };
    out.push_str(&fmt_row(header, &width));
    out.push('\n');
    let total: usize = width.iter().sum::<usize>() + 2 * (cols - 1);
    out.push_str(&"-".repeat(total));
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_row(row, &width));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(-2.5), "-2.5");
        assert_eq!(fmt_sig(0.125), "0.125");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig(1e-7), "1e-7");
        assert_eq!(fmt_sig(3.0e20), "3e20");
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(fmt_complex(Complex64::new(1.0, 0.0)), "1");
        assert_eq!(fmt_complex(Complex64::new(0.0, -1.0)), "-1i");
        assert_eq!(fmt_complex(Complex64::new(1.5, 2.0)), "1.5+2i");
        assert_eq!(fmt_complex(Complex64::new(-0.5, -0.25)), "-0.5-0.25i");
    }
}
