//! Exact computations with mixed Weil-Deligne representations.

pub mod exact;
pub mod json;
pub mod mixedfilt;
pub mod pi1;
pub mod selmer;
pub mod wdrep;

macro_rules! book_chapters {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            #[cfg(doctest)]
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub struct $name;
        )*
    };
}

book_chapters! {
    BookIntroduction => "introduction.md",
    BookExact => "exact.md",
    BookWdrep => "wdrep.md",
    BookMixed => "mixed.md",
    BookStructure => "structure.md",
    BookPi1 => "pi1.md",
    BookSelmer => "selmer.md",
    BookCurves => "curves.md",
    BookCli => "cli.md",
}
