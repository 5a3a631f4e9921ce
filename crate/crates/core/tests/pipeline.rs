//! Samples built from explicit representation matrices, decoded back.

use symtrace_core::decode::io::{parse_samples, write_samples};
use symtrace_core::decode::{decode, FamilySample};
use symtrace_core::symrep::{build_rep, RepSpec};
use symtrace_core::{rat, RationalMatrix};

fn matrix_samples(spec: &RepSpec) -> Vec<FamilySample> {
    let mut out = Vec::new();
    // [[1 + a, a], [1, 1]] has det 1 and trace 2 + a; [[b, 1], [-d, 0]] has det d
    for a in -4..(spec.degree_sum() as i64) {
        let g = RationalMatrix::from_i64_rows(&[&[1 + a, a], &[1, 1]]).unwrap();
        out.push(sample(spec, &g));
    }
    for (d, b) in [(2, 3), (3, -1), (5, 2)] {
        let g = RationalMatrix::from_i64_rows(&[&[b, 1], &[-d, 0]]).unwrap();
        out.push(sample(spec, &g));
    }
    out
}

fn sample(spec: &RepSpec, g: &RationalMatrix) -> FamilySample {
    let v = build_rep(spec, g).unwrap().trace().unwrap();
    FamilySample::new(g.trace().unwrap(), g.det().unwrap(), v)
}

#[test]
fn matrices_decode_to_their_spec() {
    for (factors, w) in [(vec![2], 1), (vec![1, 2], 0), (vec![1, 1, 3], 2), (vec![4], 3)] {
        let spec = RepSpec::new(factors, w).unwrap();
        let samples = matrix_samples(&spec);
        assert!(samples.iter().filter(|s| s.is_det_one()).count() >= spec.degree_sum() as usize + 2);
        let r = decode(&samples).unwrap();
        assert_eq!(r.to_spec(), Some(spec));
    }
}

#[test]
fn sample_files_survive_a_round_trip() {
    let spec = RepSpec::new(vec![1, 3], 1).unwrap();
    let samples = matrix_samples(&spec);
    let mut buf = Vec::new();
    write_samples(&mut buf, &samples).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(parse_samples(&text).unwrap(), samples);
    assert_eq!(samples[0].d, rat(1));
}
