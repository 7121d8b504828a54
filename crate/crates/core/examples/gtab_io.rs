//! Parse a multiplication table, validate it, and write it back.

use groupiso::group::{parse_gtab, parse_gtab_with, Validation};

fn main() -> groupiso::Result<()> {
    let text = "# Klein four-group\n4\n1 2 3 4\n2 1 4 3\n3 4 1 2\n4 3 2 1\n";
    let g = parse_gtab(text)?;
    println!("order {}, identity {}, abelian {}", g.order(), g.identity() + 1, g.is_abelian());
    print!("{}", g.to_gtab());

    // row 2 repeats an entry, so this is not a Latin square
    let broken = "2\n1 2\n2 2\n";
    match parse_gtab(broken) {
        Ok(_) => println!("accepted?"),
        Err(e) => println!("rejected: {e}"),
    }

    let g = parse_gtab_with(text, Validation::Full)?;
    println!("full associativity check passed for order {}", g.order());
    Ok(())
}
