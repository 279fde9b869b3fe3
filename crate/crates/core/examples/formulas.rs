//! Parsing, rendering and substituting formulas.
//!
//! `->` is right-associative and binds looser than `~`.

use hxlab::formula::{enumerate_formulas, RenderStyle};
use hxlab::{parse_formula, Formula, Substitution, Var};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let peirce = parse_formula("((p -> q) -> p) -> p")?;
    println!("parsed:      {peirce}");
    println!("full parens: {}", peirce.render_with(RenderStyle::Full));
    println!("size {} over {:?}", peirce.size(), peirce.variables());

    // p->q->r is p->(q->r)
    assert_eq!(parse_formula("p->q->r")?, parse_formula("p->(q->r)")?);

    let s = Substitution::new()
        .with("p", parse_formula("~r")?)
        .with("q", Formula::var("p"));
    println!("{s} applied: {}", s.apply(&peirce));

    match parse_formula("(p ->") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }

    let vars = [Var::new("p")?];
    let small: Vec<String> = enumerate_formulas(&vars, 4).map(|f| f.to_string()).collect();
    println!(
        "{} formulas over p with at most 4 nodes: {}",
        small.len(),
        small.join("  ")
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
