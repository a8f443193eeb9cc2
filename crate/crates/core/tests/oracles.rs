//! Reference values computed with mpmath at 40+ digits by
//! `tests/oracles/generate.py`.

use approx::assert_relative_eq;
use eiei::acquisition::{eei, expected_improvement, two_point_ei, Gaussian2, Threshold};
use eiei::benchlab::{beta_from_dimension, fig2_function};
use eiei::gp::{condition, Design, MaternKernel};
use eiei::special_math::{bvn_cdf, matern_correlation, std_normal_cdf, std_normal_pdf, Correlation, MaternSmoothness};

fn nu(v: f64) -> MaternSmoothness<f64> {
    MaternSmoothness::new(v).unwrap()
}

#[test]
fn normal_distribution() {
    assert_relative_eq!(std_normal_pdf(3.0).unwrap(), 0.004_431_848_411_938_007_2, max_relative = 1e-15);
    assert_relative_eq!(std_normal_cdf(1.96).unwrap(), 0.975_002_104_851_779_6, max_relative = 1e-15);
    assert_relative_eq!(std_normal_cdf(-7.5).unwrap(), 3.190_891_672_910_896_2e-14, max_relative = 1e-13);
}

#[test]
fn bivariate_normal() {
    let cases = [
        (0.7_f64, -0.3, 0.4, 0.335_649_273_646_300_08),
        (-1.2, -0.8, -0.95, 2.399_521_042_506_364_7e-12),
        (0.4, 1.1, 0.97, 0.655_375_431_125_011_5),
        (-2.0, 1.5, -0.99, 6.162_856_919_445_485e-7),
    ];
    for (h, k, r, expect) in cases {
        let v = bvn_cdf(h, k, Correlation::new(r).unwrap()).unwrap();
        assert_relative_eq!(v, expect, max_relative = 1e-9);
        assert!((v - expect).abs() < 1e-14, "Φ₂({h}, {k}; {r}) = {v}");
    }
}

#[test]
fn matern_correlation_values() {
    let cases = [
        (0.3, 6.5, 0.900_185_797_266_198_7),
        (1.0, 6.5, 0.343_569_671_664_534_97),
        (2.2, 6.5, 0.014_923_613_199_425_815),
        (0.7, 2.5, 0.529_803_379_815_119_1),
        (0.3, 1.3, 0.816_410_136_368_511_6),
        (1.7, 1.3, 0.081_997_086_863_137_15),
        (0.05, 0.8, 0.975_804_856_096_690_9),
        (3.0, 3.7, 0.001_963_844_755_416_827_9),
    ];
    for (h, v, expect) in cases {
        let r = matern_correlation(h, nu(v)).unwrap();
        assert_relative_eq!(r, expect, max_relative = 1e-10);
    }
}

#[test]
fn kernel_and_length_scale() {
    let k = MaternKernel::new(1.0, 0.2121, nu(6.5)).unwrap();
    assert_relative_eq!(k.eval(&[0.0], &[0.1]).unwrap(), 0.774_380_002_464_297_6, max_relative = 1e-12);
    let b: f64 = beta_from_dimension(3).unwrap();
    assert_relative_eq!(b, 0.212_156_883_589_411_05, max_relative = 1e-14);
    assert!((b - 0.2).abs() < 0.02);
}

#[test]
fn fig2_values() {
    assert_relative_eq!(fig2_function(0.0).unwrap(), 0.791_829_547_934_219_96, max_relative = 1e-14);
    let xs: Vec<f64> = (0..2001).map(|i| -1.0 + i as f64 / 1000.0).collect();
    let vals: Vec<f64> = xs.iter().map(|&x| fig2_function(x).unwrap()).collect();
    let best = (0..vals.len()).fold(0, |b, i| if vals[i] > vals[b] { i } else { b });
    assert_eq!(best, 902);
    assert_relative_eq!(vals[best], 1.099_347_703_496_648_6, max_relative = 1e-13);
}

#[test]
fn improvement_values() {
    let e = expected_improvement(1.0, 1.0, Threshold(0.0)).unwrap();
    assert_relative_eq!(e, 1.083_315_470_587_686_3, max_relative = 1e-14);
    let law = Gaussian2::new([0.0, 0.0], [[1.0, 0.0], [0.0, 1.0]]).unwrap();
    assert_relative_eq!(two_point_ei(law, Threshold(0.0)).unwrap(), 0.681_037_072_175_310_8, max_relative = 1e-13);
}

fn kriging_fixture() -> eiei::GpPosterior64 {
    let k = MaternKernel::new(1.0, 0.5, nu(2.5)).unwrap();
    let x = Design::from_points(
        3,
        &[[0.1, 0.2, 0.3], [0.8, 0.1, 0.5], [0.4, 0.9, 0.2], [0.6, 0.5, 0.9], [0.2, 0.7, 0.7]],
    )
    .unwrap();
    condition(k, x, vec![0.5, -1.2, 0.3, 1.1, -0.4]).unwrap()
}

#[test]
fn kriging_equations() {
    let post = kriging_fixture();
    let t = Design::from_points(3, &[[0.5, 0.5, 0.5], [0.15, 0.25, 0.35], [0.9, 0.9, 0.1]]).unwrap();
    let (m, c) = post.posterior_mean_cov(&t).unwrap();
    let mean = [0.087_484_612_601_801_757, 0.422_165_908_806_397_16, 0.082_577_382_411_355_65];
    let cov = [
        [0.600_058_486_066_138_9, 0.068_282_866_937_758_95, 0.045_401_361_045_296_26],
        [0.068_282_866_937_758_95, 0.085_358_952_234_539_19, -0.001_289_428_826_215_302_4],
        [0.045_401_361_045_296_26, -0.001_289_428_826_215_302_4, 0.903_043_885_471_739_3],
    ];
    for i in 0..3 {
        assert!((m[i] - mean[i]).abs() < 1e-10, "mean {i}");
        for j in 0..3 {
            assert!((c.get(i, j) - cov[i][j]).abs() < 1e-10, "cov {i},{j}");
        }
    }
}

#[test]
fn kriging_close_pair() {
    let post = kriging_fixture();
    let t = Design::from_points(3, &[[0.3, 0.3, 0.3], [0.32, 0.31, 0.3]]).unwrap();
    let (m, c) = post.posterior_mean_cov(&t).unwrap();
    let mean = [0.220_172_865_788_324_55, 0.184_362_524_599_139_8];
    let cov = [[0.396_907_735_128_787_6, 0.418_180_823_756_113_1], [0.418_180_823_756_113_1, 0.443_957_214_157_281_8]];
    for i in 0..2 {
        assert!((m[i] - mean[i]).abs() < 1e-10);
        for j in 0..2 {
            assert!((c.get(i, j) - cov[i][j]).abs() < 1e-10);
        }
    }
}

#[test]
fn expected_expected_improvement() {
    let k = MaternKernel::new(1.0, 0.3, nu(2.5)).unwrap();
    let post = condition(k, Design::from_flat(1, vec![0.1, 0.5, 0.85]).unwrap(), vec![0.2, 0.9, -0.3]).unwrap();
    let v = eei(&post, Threshold(0.9), &[0.3], &[0.7]).unwrap();
    assert_relative_eq!(v, 0.028_366_701_867_019_501, max_relative = 1e-9);
}
