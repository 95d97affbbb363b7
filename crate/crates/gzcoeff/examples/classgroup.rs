//! Class group of Q(√-47): reduced forms, group law, ideals of a norm.

use gzcoeff::quadfield::{split_type, ClassGroup, Discriminant};

fn main() -> gzcoeff::Result<()> {
    let d = Discriminant::new(-47)?;
    let g = ClassGroup::new(d)?;
    println!("h({d}) = {}", g.h());
    for i in 0..g.h() {
        println!("  class {i}: {}  order {}  norm {}", g.form(i), g.order(i), g.class_norm(i));
    }
    let (a, b) = (1, 2);
    println!("class {a} · class {b} = class {}", g.mul(a, b));
    for q in [2u64, 3, 5, 47] {
        println!("{q} is {}", split_type(d, q)?.name());
    }
    for (id, c) in g.ideals_of_norm(6) {
        println!("ideal {id} of norm 6 lies in class {c}");
    }
    Ok(())
}
