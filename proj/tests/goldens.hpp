#pragma once

// Frozen reference values for the default calibrated setup: 0.532 um pump,
// ktp_z at 29.5 C with a 9 um poling period, crystal length chosen for a
// 50 nm intensity FWHM, 4096-point grid spanning the main phase-matching
// lobe, and a shaper with 640 x 100 um pixels, 200 um waist, unit
// magnification, fill fraction 0.6 and a fused-silica prism pair.
//
// All numbers were computed with an independent high-resolution
// implementation of the same formulas (denser grids, its own quadrature and
// mask transcription) and are recorded here at the precision they were
// printed. Tests compare against them at tolerances matching that precision.

namespace biphoton::goldens {

// frequencies and conversions
inline constexpr double omega_pc = 3.540698434791;               // rad/fs
inline constexpr double omega_center = 1.770349217396;           // rad/fs
inline constexpr double nm_per_radfs_1064 = 601.011365184385;    // nm/(rad/fs)
inline constexpr double k_vacuum_1064 = 5.905249348853;          // rad/um

// material models at 1.064 / 0.532 um
inline constexpr double n_ktp_1064_25c = 1.830151892643;
inline constexpr double n_ktp_0532_25c = 1.889520565137;
inline constexpr double dn_ktp_1064_10k = 1.503310934488e-4;     // T: 25 -> 35 C
inline constexpr double n_silica_1064 = 1.449630989859;
inline constexpr double dn_dlambda_silica_1064 = -0.011999018991;  // 1/um
inline constexpr double prism_gamma_1064 = 0.085171963906;       // rad fs/um

// crystal calibration (at the 29.5 C operating temperature)
inline constexpr double qpm_offset = -3.547308601621;            // rad/mm
inline constexpr double mismatch_plus_1k = 0.113683085;          // rad/mm
inline constexpr double crystal_length = 9.303460856505;         // mm
inline constexpr double grid_half_span = 0.062500952592;         // rad/fs

// biphoton amplitude on the default grid
inline constexpr double xi_abs_first = 2.166774e-12;    // node 0 (main-lobe zero)
inline constexpr double xi_abs_last = 9.772387e-4;      // node n-1
inline constexpr double pm_arg_1089 = -1.328398768;     // dk L / 2 at 1.089 um
inline constexpr double xi_abs_1089 = 0.730778514;
inline constexpr double fwhm_intensity_radfs = 0.083193148861;
inline constexpr double fwhm_intensity_nm = 50.000028;
inline constexpr double fwhm_amplitude_radfs = 0.097095604684;

// coincidence rate
inline constexpr double allpass_integral = 9.349645394437e-2;    // trapezoid of xi
inline constexpr double g2_allpass_raw = 8.741586900172e-3;

// calibrated shaper geometry
inline constexpr double dispersion_scale = 395486.491123;        // um/(rad/fs)
inline constexpr double focal_mm = 13710.182535891;
inline constexpr double chirp_rate = 4.307199654997e-7;          // rad/um^2

// |M| of the pixelated knife edge (edge at zero detuning, 200 um waist) at
// detunings -0.003 + 0.0003 k, k = 0..20. The leading zeros and trailing
// ones are exact: there the truncated spot lies entirely on one side.
inline constexpr double edge_rolloff[21] = {
    0.0, 0.0, 0.0, 0.0,
    0.000000232814, 0.000013649073, 0.000395628249, 0.005919975205,
    0.046680751096, 0.200743047218, 0.500000000000, 0.799269766297,
    0.953341616237, 0.994091295343, 0.999606531592, 0.999986523842,
    0.999999773024, 1.0, 1.0, 1.0, 1.0};

// 10-90% width (rad/fs) of that roll-off for waist = {0.5, 1, 2, 4} x pitch
inline constexpr double rolloff_width[4] = {2.372528e-4, 4.625116e-4,
                                            9.177680e-4, 1.832265e-3};

// physical transfer of the paired quadratic phase mask, phi2 = 2000 fs^2
inline constexpr double quad_mask_mag_0 = 1.00000218;            // delta 0
inline constexpr double quad_mask_mag_001 = 0.99997555;          // delta 0.01
inline constexpr double quad_mask_mag_m031 = 0.99974628;         // delta -0.031
inline constexpr double quad_mask_re_001 = 0.994966494646;
inline constexpr double quad_mask_im_001 = 0.099963897734;

// scan analysis (ideal mode, default setup)
inline constexpr double slice_min_value = 0.67542;       // narrow-slice dips
inline constexpr double slice_center_value = 0.8297224878;
inline constexpr double wide_slice_center = 0.027033538;
inline constexpr double grating_quarter = 0.224337956;   // grating shift P/4
inline constexpr double grating_peak = 0.277051397;      // grating shift 3P/4
inline constexpr double quad_scan_2000 = 0.178303017076;
inline constexpr double quad_scan_4000 = 0.091597498;
inline constexpr double coherence_time_fs = 106.270188062;
inline constexpr double selftest_half_u = 1.422937009150;
inline constexpr double carrier_omega = 1.770496804;     // rad/fs
inline constexpr double fringe_lag_fs = 1.767996248;
inline constexpr double suppression_db = 124.4;
inline constexpr double envelope_visibility_1ps = 0.001283;

}  // namespace biphoton::goldens
