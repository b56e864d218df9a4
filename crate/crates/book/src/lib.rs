//! Runs the code blocks of the guide in `book/` as doctests.

#[cfg(doctest)]
mod chapters {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/frames.md")]
    mod frames {}
    #[doc = include_str!("../../../book/src/courant.md")]
    mod courant {}
    #[doc = include_str!("../../../book/src/spinors.md")]
    mod spinors {}
    #[doc = include_str!("../../../book/src/symmetries.md")]
    mod symmetries {}
    #[doc = include_str!("../../../book/src/cokahler.md")]
    mod cokahler {}
    #[doc = include_str!("../../../book/src/tduality.md")]
    mod tduality {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
