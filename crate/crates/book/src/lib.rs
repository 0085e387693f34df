//! Runs the code listings of the guide in `book/` as doc-tests.

macro_rules! chapter {
    ($name:ident, $file:literal) => {
        #[doc = include_str!(concat!("../../../book/src/", $file))]
        pub mod $name {}
    };
}

chapter!(introduction, "introduction.md");
chapter!(distributions, "distributions.md");
chapter!(residual_life, "residual-life.md");
chapter!(oracle, "oracle.md");
chapter!(regression, "regression.md");
chapter!(fitting, "fitting.md");
chapter!(cli, "cli.md");
chapter!(formats, "formats.md");

#[doc = include_str!("../../../README.md")]
pub mod readme {}
