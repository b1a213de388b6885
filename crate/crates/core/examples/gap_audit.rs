use fockcat_core::fock::{apply_local, ModeOp};
use fockcat_core::states::{split_smsv, SplitterParam, SqueezeParam};
use fockcat_core::subtraction::{filter_operator, subtract_branch_single};
use num_complex::Complex64;

fn main() {
    let lam = SqueezeParam::new(0.2).unwrap();
    let spl = SplitterParam::balanced();
    let (t_s, r_s) = ((0.9f64).sqrt(), (0.1f64).sqrt());
    for n_max in [10usize, 12, 14, 16] {
        let input = split_smsv(&lam, &spl, n_max).unwrap();
        for k in [1usize, 2] {
            for alpha_val in [0.0, 0.2, 0.5] {
                let alpha = Complex64::from(alpha_val);
                let branch = subtract_branch_single(&input, alpha, k, t_s, r_s).unwrap();
                let undo = ModeOp::displacement(-t_s * alpha, n_max + 1, n_max + 1).unwrap();
                let lhs = apply_local(&branch, Some(&undo), None).unwrap();
                let f = filter_operator(k, alpha, t_s, r_s, n_max).unwrap();
                let rhs = apply_local(&input, Some(&f), None).unwrap();
                let mut gap = 0.0f64;
                for m in 0..=n_max {
                    for n in 0..=n_max {
                        gap = gap.max((lhs.coeff(m, n) - rhs.coeff(m, n)).norm());
                    }
                }
                println!("n_max={n_max} k={k} alpha={alpha_val}: gap {gap:.3e}");
            }
        }
    }
}
