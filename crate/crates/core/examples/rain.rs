//! Builds a two-event space from text and compares the observational
//! conditional with the interventional one.

use causalspace::dsl::{QueryOutcome, elaborate, eval_query, parse_model, parse_query};

const MODEL: &str = "
outcomes 4
event Rain = {0, 1}
event Wet = {0, 2}
cause P(Rain | *) = 1/2
cause P(Wet | Rain) = 2/3
cause P(Wet | ~Rain) = 1/6
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (space, names) = elaborate(&parse_model(MODEL)?)?;

    for text in ["belief Rain | Wet", "belief Rain | do(Wet)"] {
        match eval_query(&space, &names, &parse_query(text)?)? {
            QueryOutcome::Belief(p) => println!("{text} => {p}"),
            other => println!("{text} => {other:?}"),
        }
    }
    Ok(())
}
