//! Exact integer-polynomial arithmetic: admission of a polynomial set,
//! resultants, discriminants and certified real roots.
//!
//! ```text
//! cargo run --example polynomial_resultants
//! ```

use trace_lp::polyarith::{count_real_roots, discriminant, real_roots, resultant, IntPoly, PolySet};

fn main() -> trace_lp::Result<()> {
    let polys = vec![
        IntPoly::from_i64(&[0, 1]),
        IntPoly::from_i64(&[1, -1]),
        IntPoly::from_i64(&[1, -3, 1]),
        IntPoly::from_i64(&[-1, 6, -5, 1]),
    ];
    let set = PolySet::new(polys)?;
    println!("total degree {}", set.total_degree());
    for q in set.iter() {
        let roots = real_roots(q, 1e-15)?;
        println!(
            "{q:>16}: disc {:>4}, {} real roots {:?}",
            discriminant(q).to_string(),
            count_real_roots(q),
            roots
        );
    }
    let p = &set.polys()[2];
    let q = &set.polys()[3];
    println!("Res({p}, {q}) = {}", resultant(p, q));

    // x^2 + 1 has no real roots and is rejected.
    match PolySet::new(vec![IntPoly::from_i64(&[1, 0, 1])]) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
