#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}
#[doc = include_str!("../../../book/src/exact.md")]
mod exact {}
#[doc = include_str!("../../../book/src/transcendental.md")]
mod transcendental {}
#[doc = include_str!("../../../book/src/bounds.md")]
mod bounds {}
#[doc = include_str!("../../../book/src/root.md")]
mod root {}
#[doc = include_str!("../../../book/src/pipeline.md")]
mod pipeline {}
#[doc = include_str!("../../../book/src/certificates.md")]
mod certificates {}
#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
