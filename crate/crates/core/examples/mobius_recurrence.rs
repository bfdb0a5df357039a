use hybridnet::closed_forms::{iterate_mobius, solve_mobius, MobiusRecurrence};
use hybridnet::exact::rational_to_f64;

fn main() {
    // a_{n+1} = a_n / (a_n + 1), a_1 = 1, so a_n = 1/n
    let harmonic = MobiusRecurrence::from_ints(1, 0, 1, 1, 1);
    let s = solve_mobius(&harmonic, 7).unwrap();
    println!("1/n at n=7: {:?} ({:?})", s.value, s.branch);

    let cases = [(2, 1, 1, 2, 3), (1, -1, 1, 1, 2), (3, 2, 1, 4, 1)];
    for (p, q, r, s, a1) in cases {
        let rec = MobiusRecurrence::from_ints(p, q, r, s, a1);
        let n = 12;
        let closed = solve_mobius(&rec, n).unwrap();
        let direct = iterate_mobius(&rec, n).unwrap();
        println!(
            "p={p} q={q} r={r} s={s} a1={a1}: closed {:.12} direct {:.12} lambda={:?}",
            closed.value.as_f64(),
            rational_to_f64(direct.last().unwrap()),
            closed.lambda
        );
    }
}
