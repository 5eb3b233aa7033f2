//! Inductive program synthesis from input/output examples.
//!
//! Learning runs in two stages. First a library of dyadic predicates,
//! possibly recursive, is invented by enumerating small chain clauses over a
//! domain's primitives ([`invent`]). Then a best-first search composes
//! library predicates into a program, applying each candidate to the example
//! inputs and ranking the resulting states with an example-dependent loss
//! such as edit distance or Hamming distance ([`search`], [`losses`]).
//!
//! ```
//! use brute::domains::IntDomain;
//! use brute::invent::{enumerate_library, InventConfig};
//! use brute::kernel::Domain;
//! use brute::losses;
//! use brute::search::{best_first_search, SearchConfig};
//!
//! let domain = IntDomain::default();
//! let library = enumerate_library(domain.primitives(), &InventConfig::default());
//! let positives = [(1, 4), (7, 10)];
//! let result = best_first_search(&domain, &library, &positives, &[], &losses::abs_diff(), &SearchConfig::default());
//! let program = result.program.unwrap();
//! assert_eq!(program.run(&domain, &7, 100), Some(10));
//! ```

pub mod domains;
pub mod harness;
pub mod invent;
pub mod kernel;
pub mod losses;
pub mod search;

pub use kernel::{Domain, LibraryPredicate, Program};
