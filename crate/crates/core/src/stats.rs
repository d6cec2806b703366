//! Small summary-statistics helpers.

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
pub fn sample_sd(xs: &[f64]) -> f64 {
    sample_var(xs).sqrt()
}

pub fn sample_var(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let mu = mean(xs);
    xs.iter().map(|x| (x - mu).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
}

/// Least-squares line `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LineFit {
    assert_eq!(xs.len(), ys.len());
    let mx = mean(xs);
    let my = mean(ys);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    LineFit { slope, intercept, r2 }
}

/// Fits `y ~ C * x^k` on log-log axes; the slope is the growth exponent `k`.
pub fn power_law_fit(xs: &[f64], ys: &[f64]) -> LineFit {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    linear_fit(&lx, &ly)
}

/// Fits `y_i ~ C * alpha^i` for positive `y`. Returns `(alpha, C, r2)`.
pub fn geometric_fit(ys: &[f64]) -> (f64, f64, f64) {
    let xs: Vec<f64> = (0..ys.len()).map(|i| i as f64).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let fit = linear_fit(&xs, &ly);
    (fit.slope.exp(), fit.intercept.exp(), fit.r2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_moments() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(mean(&xs), 2.5);
        assert!((sample_var(&xs) - 5.0 / 3.0).abs() < 1e-15);
        assert_eq!(sample_sd(&[3.0]), 0.0);
    }

    #[test]
    fn exact_power_law() {
        let xs = [2.0, 3.0, 5.0, 7.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 4.0 * x.powi(3)).collect();
        let fit = power_law_fit(&xs, &ys);
        assert!((fit.slope - 3.0).abs() < 1e-12);
        assert!((fit.r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_geometric() {
        let ys: Vec<f64> = (0..10).map(|i| 3.0 * 0.5f64.powi(i)).collect();
        let (alpha, c, r2) = geometric_fit(&ys);
        assert!((alpha - 0.5).abs() < 1e-12 && (c - 3.0).abs() < 1e-12 && r2 > 0.999_999);
    }
}
