//! Universal averaging-set sizes against unitary design bounds, with the
//! bound cross-checked by the rank of sampled operator spans.

use unitary_averaging::numerics::TolerancePolicy;
use unitary_averaging::sizes::{
    emit_table, lower_bound_t2, operator_span_dim, t2_ratio, table_to_csv, universal_set_size,
};

fn main() -> unitary_averaging::Result<()> {
    print!("{}", table_to_csv(&emit_table()));

    let policy = TolerancePolicy::default();
    for (r, s) in [(2, 0), (1, 1), (2, 1), (3, 0)] {
        let n = 1usize << (r + s);
        let rank = operator_span_dim(2, r, s, 2 * n * n, 5, &policy)?;
        println!("rank of span U^⊗{r} ⊗ conj(U)^⊗{s} on C^2: {rank}");
    }
    for d in [2, 3, 10, 50] {
        println!(
            "d = {d:>2}: universal {:>7}, 2-design bound {:>7}, ratio {:.4}",
            universal_set_size(d, 2),
            lower_bound_t2(d),
            t2_ratio(d)
        );
    }
    Ok(())
}
