//! Smith normal form, kernels and sublattice arithmetic over Z.

use cmlattice::lattice::{kernel_basis, smith, zvec, IntMatrix, Sublattice};

fn main() {
    let m = IntMatrix::from_i64(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith(&m);
    let diag: Vec<String> = s.diagonal().iter().map(|x| x.to_string()).collect();
    println!("invariant factors: {}", diag.join(" "));
    println!("rank {}, det {}", s.rank(), m.determinant());
    assert_eq!(s.u.mul(&m).mul(&s.v), s.d);

    // row vectors x with x M = 0
    let k = IntMatrix::from_i64(3, &[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
    for v in kernel_basis(&k) {
        println!("kernel vector {v:?}");
    }

    let a = Sublattice::new(3, &[zvec(&[2, 0, 0]), zvec(&[0, 1, 1])]);
    let b = Sublattice::new(3, &[zvec(&[1, 0, 0]), zvec(&[0, 2, 2])]);
    let meet = a.intersection(&b);
    println!("a cap b has rank {}, index {:?} in a", meet.rank(), meet.index_in(&a));
    println!("a saturated: {}, saturation contains (1,0,0): {}", a.is_saturated(), a.saturation().contains(&zvec(&[1, 0, 0])));
}
