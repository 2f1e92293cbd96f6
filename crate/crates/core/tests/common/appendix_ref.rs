//! Line-by-line Rust transcription of the published C routine
//! `HilbertInvOrder3d`, kept apart from the library so it can serve as an
//! independent reference. Arithmetic is on `u32` exactly as in C.

#![allow(dead_code)]

const IDATA3D: [u32; 192] = [
    0, 7, 3, 4, 1, 6, 2, 5, 0, 1, 3, 2, 7, 6, 4, 5,
    0, 3, 7, 4, 1, 2, 6, 5, 2, 3, 5, 4, 1, 0, 6, 7,
    4, 5, 3, 2, 7, 6, 0, 1, 4, 7, 3, 0, 5, 6, 2, 1,
    6, 7, 5, 4, 1, 0, 2, 3, 0, 1, 7, 6, 3, 2, 4, 5,
    2, 1, 5, 6, 3, 0, 4, 7, 6, 1, 5, 2, 7, 0, 4, 3,
    0, 7, 1, 6, 3, 4, 2, 5, 2, 1, 3, 0, 5, 6, 4, 7,
    4, 7, 5, 6, 3, 0, 2, 1, 4, 5, 7, 6, 3, 2, 0, 1,
    6, 1, 7, 0, 5, 2, 4, 3, 0, 3, 1, 2, 7, 4, 6, 5,
    2, 3, 1, 0, 5, 4, 6, 7, 6, 7, 1, 0, 5, 4, 2, 3,
    2, 5, 1, 6, 3, 4, 0, 7, 4, 3, 7, 0, 5, 2, 6, 1,
    4, 3, 5, 2, 7, 0, 6, 1, 6, 5, 1, 2, 7, 4, 0, 3,
    2, 5, 3, 4, 1, 6, 0, 7, 6, 5, 7, 4, 1, 2, 0, 3,
];

const ISTATE3D: [u32; 192] = [
    1, 6, 3, 4, 2, 5, 0, 0, 0, 7, 8, 1, 9, 4, 5, 1,
    15, 22, 23, 20, 0, 2, 19, 2, 3, 23, 3, 15, 6, 20, 16, 22,
    11, 4, 12, 4, 20, 1, 22, 13, 22, 12, 20, 11, 5, 0, 5, 19,
    17, 0, 6, 21, 3, 9, 6, 2, 10, 1, 14, 13, 11, 7, 12, 7,
    8, 9, 8, 18, 14, 12, 10, 11, 21, 8, 9, 9, 1, 6, 17, 7,
    7, 17, 15, 12, 16, 13, 10, 10, 11, 14, 9, 5, 11, 22, 0, 8,
    18, 5, 12, 10, 19, 8, 12, 20, 8, 13, 19, 7, 5, 13, 18, 4,
    23, 11, 7, 17, 14, 14, 6, 1, 2, 18, 10, 15, 21, 19, 20, 15,
    16, 21, 17, 19, 16, 2, 3, 18, 6, 10, 16, 14, 17, 23, 17, 15,
    18, 18, 21, 8, 17, 7, 13, 16, 3, 4, 13, 16, 19, 19, 2, 5,
    16, 13, 20, 20, 4, 3, 15, 12, 9, 21, 18, 21, 15, 14, 23, 10,
    22, 22, 6, 1, 23, 11, 4, 3, 14, 23, 2, 9, 22, 23, 21, 0,
];

/// Returns `x.hsfc` for `x.coord = coord` with `hsfc_maxlevel = maxlevel`.
pub fn hilbert_inv_order_3d(coord: [f64; 3], maxlevel: i32) -> f64 {
    let intmx: u32 = 4294967295;
    let efbit: u32 = intmx >> 2;
    let k0 = 60 - maxlevel * 3;
    let k1 = 30 - maxlevel * 3;
    let k2 = -maxlevel * 3;

    let mut c = [
        (coord[0] * intmx as f64) as u32,
        (coord[1] * intmx as f64) as u32,
        (coord[2] * intmx as f64) as u32,
    ];
    c[1] >>= 1;
    c[2] >>= 2;

    let mut key = [0u32; 3];
    let mut stat: u32 = 0;
    let mut eff_len: i32 = 30;
    for _level in 0..maxlevel {
        eff_len -= 1;
        let temp = ((c[0] >> eff_len) & 4) | ((c[1] >> eff_len) & 2) | ((c[2] >> eff_len) & 1);

        key[0] = (key[0] << 3) | ((key[1] >> 27) & 7);
        key[1] = (key[1] << 3) | ((key[2] >> 27) & 7);
        key[2] = (key[2] << 3) | IDATA3D[(stat * 8 + temp) as usize];

        stat = ISTATE3D[(stat * 8 + temp) as usize];
    }

    key[0] &= efbit;
    key[1] &= efbit;
    key[2] &= efbit;

    let mut hsfc = ldexp(key[2] as f64, k2);
    hsfc += ldexp(key[1] as f64, k1);
    hsfc += ldexp(key[0] as f64, k0);
    hsfc
}

fn ldexp(x: f64, e: i32) -> f64 {
    x * 2f64.powi(e)
}
