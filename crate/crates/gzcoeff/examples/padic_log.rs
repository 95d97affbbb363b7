//! Iwasawa logarithm and Teichmüller lifts.

use gzcoeff::padic::{iwasawa_log, teichmuller};
use gzcoeff::polykit::rat;
use num_bigint::BigInt;

fn main() -> gzcoeff::Result<()> {
    let l = iwasawa_log(5, &rat(6, 1), 3)?;
    println!("log_5(6) = {l}  (residue {} mod 125)", l.residue(3)?);
    let w = teichmuller(5, &BigInt::from(2), 4)?;
    println!("ω(2) in Z_5 = {w}");
    println!("ω(2)^4 = {}", w.pow(4));
    // log_p(p) = 0 and log_p(xy) = log_p(x) + log_p(y)
    let (x, y) = (rat(22, 7), rat(-9, 4));
    let lhs = iwasawa_log(11, &(&x * &y), 12)?;
    let rhs = iwasawa_log(11, &x, 12)?.add(&iwasawa_log(11, &y, 12)?);
    println!("log_11(xy) = {lhs}");
    println!("sum of logs = {rhs}");
    Ok(())
}
