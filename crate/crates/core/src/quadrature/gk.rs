//! 31-point Gauss-Kronrod rule (15-point Gauss embedded).
//!
//! Abscissae are strictly interior, so panel endpoints are never evaluated;
//! the adaptive driver relies on this to keep singular catalog points out
//! of the integrand's way.

/// Kronrod abscissae on [0, 1); the rule is symmetric about the center.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 16] = [
    0.998_002_298_693_397_060_285_172_840_152_271,
    0.987_992_518_020_485_428_489_565_718_586_613,
    0.967_739_075_679_139_134_257_347_978_784_337,
    0.937_273_392_400_705_904_307_758_947_710_209,
    0.897_264_532_344_081_900_882_509_656_454_496,
    0.848_206_583_410_427_216_200_648_320_774_217,
    0.790_418_501_442_465_932_967_649_294_817_947,
    0.724_417_731_360_170_047_416_186_054_613_938,
    0.650_996_741_297_416_970_533_735_895_313_275,
    0.570_972_172_608_538_847_537_226_737_253_911,
    0.485_081_863_640_239_680_693_655_740_232_351,
    0.394_151_347_077_563_369_897_207_370_981_045,
    0.299_180_007_153_168_812_166_780_024_266_389,
    0.201_194_093_997_434_522_300_628_303_394_596,
    0.101_142_066_918_717_499_027_074_231_447_392,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// 15-point Gauss weights (for the odd-indexed Kronrod abscissae).
#[allow(clippy::excessive_precision)]
const WG: [f64; 8] = [
    0.030_753_241_996_117_268_354_628_393_577_204,
    0.070_366_047_488_108_124_709_267_416_450_667,
    0.107_159_220_467_171_935_011_869_546_685_869,
    0.139_570_677_926_154_314_447_804_794_511_028,
    0.166_269_205_816_993_933_553_200_860_481_209,
    0.186_161_000_015_562_211_026_800_561_866_423,
    0.198_431_485_327_111_576_456_118_326_443_839,
    0.202_578_241_925_561_272_880_620_199_967_519,
];

/// 31-point Kronrod weights.
#[allow(clippy::excessive_precision)]
const WGK: [f64; 16] = [
    0.005_377_479_872_923_348_987_792_051_430_128,
    0.015_007_947_329_316_122_538_374_763_075_807,
    0.025_460_847_326_715_320_186_874_001_019_653,
    0.035_346_360_791_375_846_222_037_948_478_360,
    0.044_589_751_324_764_876_608_227_299_373_280,
    0.053_481_524_690_928_087_265_343_147_239_430,
    0.062_009_567_800_670_640_285_139_230_960_803,
    0.069_854_121_318_728_258_709_520_077_099_147,
    0.076_849_680_757_720_378_894_432_777_482_659,
    0.083_080_502_823_133_021_038_289_247_286_104,
    0.088_564_443_056_211_770_647_275_443_693_774,
    0.093_126_598_170_825_321_225_486_872_747_346,
    0.096_642_726_983_623_678_505_179_907_627_589,
    0.099_173_598_721_791_959_332_393_173_484_603,
    0.100_769_845_523_875_595_044_946_662_617_570,
    0.101_330_007_014_791_549_017_374_792_767_493,
];

/// Kronrod estimate of the integral of `f` over `(a, b)` together with an
/// error bound, following the QUADPACK rescaling heuristic.
pub fn qk31<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half_len = 0.5 * (b - a);
    let f_center = f(center);

    let mut fv1 = [0.0f64; 15];
    let mut fv2 = [0.0f64; 15];
    let mut res_gauss = 0.0;
    let mut res_kronrod = f_center * WGK[15];
    let mut res_abs = res_kronrod.abs();

    for j in 0..15 {
        let abscissa = half_len * XGK[j];
        let fval1 = f(center - abscissa);
        let fval2 = f(center + abscissa);
        fv1[j] = fval1;
        fv2[j] = fval2;
        let fsum = fval1 + fval2;
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * fsum;
        }
        res_kronrod += WGK[j] * fsum;
        res_abs += WGK[j] * (fval1.abs() + fval2.abs());
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[15] * (f_center - mean).abs();
    for j in 0..15 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_kronrod * half_len;
    res_abs *= half_len.abs();
    res_asc *= half_len.abs();

    let mut err = ((res_kronrod - res_gauss) * half_len).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }

    (value, err)
}
