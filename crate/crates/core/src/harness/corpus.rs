//! The bundled string-transformation corpus. Ten examples per task; all
//! inputs start with the cursor at position 0.
//!
//! | task | transformation |
//! |------|----------------|
//! | `month3` | date line to the upper-cased first three letters of the month |
//! | `lips` | `time/1` statistics line to its inferences-per-second figure |
//! | `identity` | unchanged |
//! | `capitalize` | upper-case the first character |
//! | `lowercase_initial` | lower-case the first character |
//! | `initial_upper` | first name to its upper-cased initial |
//! | `first_word` | keep everything before the first space |
//! | `drop_first_word` | keep everything after the first space |
//! | `last_char` | keep the last character |
//! | `strip_digit_prefix` | remove leading digits |
//! | `area_code` | `(ddd) ddd-dddd` to `ddd` |

use serde_json::Value;

use super::task::{DomainKind, Task, TaskParams};

fn task<S: AsRef<str>>(name: &str, pairs: &[(S, S)]) -> Task {
    Task {
        name: name.to_string(),
        domain: DomainKind::String,
        params: TaskParams::default(),
        pos: pairs.iter().map(|(x, y)| (Value::from(x.as_ref()), Value::from(y.as_ref()))).collect(),
        neg: Vec::new(),
        bucket: Some(format!("string-{name}")),
    }
}

const MONTH_ROWS: [(&str, &str); 10] = [
    ("22 July,1983 (35 years old)", "JUL"),
    ("30 October,1955 (63 years old)", "OCT"),
    ("2 November,1954 (64 years old)", "NOV"),
    ("14 March,1990 (28 years old)", "MAR"),
    ("5 January,2001 (17 years old)", "JAN"),
    ("19 August,1972 (46 years old)", "AUG"),
    ("8 December,1964 (54 years old)", "DEC"),
    ("27 April,1988 (30 years old)", "APR"),
    ("11 September,1949 (69 years old)", "SEP"),
    ("3 June,1999 (19 years old)", "JUN"),
];

const LIPS_ROWS: [(&str, &str); 10] = [
    ("16,079 inferences, 0.003 CPU in 0.003 seconds (95% CPU, 5842660 Lips)", "5842660"),
    ("1,204 inferences, 0.001 CPU in 0.001 seconds (88% CPU, 1204000 Lips)", "1204000"),
    ("532,118 inferences, 0.071 CPU in 0.072 seconds (99% CPU, 7494620 Lips)", "7494620"),
    ("88 inferences, 0.000 CPU in 0.000 seconds (72% CPU, 3411957 Lips)", "3411957"),
    ("2,906,337 inferences, 0.412 CPU in 0.415 seconds (99% CPU, 7054216 Lips)", "7054216"),
    ("47,512 inferences, 0.009 CPU in 0.010 seconds (90% CPU, 5279111 Lips)", "5279111"),
    ("7,001 inferences, 0.002 CPU in 0.002 seconds (97% CPU, 3500500 Lips)", "3500500"),
    ("301,440 inferences, 0.046 CPU in 0.047 seconds (98% CPU, 6553043 Lips)", "6553043"),
    ("12 inferences, 0.000 CPU in 0.000 seconds (60% CPU, 857143 Lips)", "857143"),
    ("990,001 inferences, 0.151 CPU in 0.153 seconds (99% CPU, 6556298 Lips)", "6556298"),
];

const NAMES: [&str; 10] = ["james", "mary", "robert", "linda", "david", "susan", "thomas", "karen", "paul", "nancy"];

const PHRASES: [(&str, &str); 10] = [
    ("hello world", "hello"),
    ("good morning", "good"),
    ("open source", "open"),
    ("blue sky", "blue"),
    ("deep learning", "deep"),
    ("red apple", "red"),
    ("fast car", "fast"),
    ("new york", "new"),
    ("big data", "big"),
    ("logic program", "logic"),
];

const DIGIT_PREFIXED: [(&str, &str); 10] = [
    ("123abc", "abc"),
    ("7zeta", "zeta"),
    ("42answer", "answer"),
    ("2001odyssey", "odyssey"),
    ("9lives", "lives"),
    ("404error", "error"),
    ("3rd", "rd"),
    ("1984novel", "novel"),
    ("88keys", "keys"),
    ("5gates", "gates"),
];

const PHONES: [(&str, &str); 10] = [
    ("(555) 123-4567", "555"),
    ("(212) 555-0199", "212"),
    ("(415) 867-5309", "415"),
    ("(303) 222-1010", "303"),
    ("(617) 440-2121", "617"),
    ("(808) 731-0042", "808"),
    ("(907) 100-9999", "907"),
    ("(312) 650-3344", "312"),
    ("(702) 888-1234", "702"),
    ("(206) 543-2100", "206"),
];

fn capitalized(s: &str) -> String {
    let mut chars = s.chars();
    chars.next().map(|c| c.to_uppercase().chain(chars).collect()).unwrap_or_default()
}

/// Every bundled task, in a fixed order.
pub fn bundled_string_corpus() -> Vec<Task> {
    let owned = |f: &dyn Fn(&str) -> (String, String)| -> Vec<(String, String)> { NAMES.iter().map(|x| f(x)).collect() };

    let identity = owned(&|x| (x.to_string(), x.to_string()));
    let capitalize = owned(&|x| (x.to_string(), capitalized(x)));
    let lowercase = owned(&|x| (capitalized(x), x.to_string()));
    let initial = owned(&|x| (x.to_string(), x[..1].to_uppercase()));
    let last = owned(&|x| (x.to_string(), x[x.len() - 1..].to_string()));
    let drop_first: Vec<(&str, &str)> =
        PHRASES.iter().map(|(x, _)| (*x, x.split_once(' ').unwrap().1)).collect();

    vec![
        task("month3", &MONTH_ROWS),
        task("lips", &LIPS_ROWS),
        task("identity", &identity),
        task("capitalize", &capitalize),
        task("lowercase_initial", &lowercase),
        task("initial_upper", &initial),
        task("first_word", &PHRASES),
        task("drop_first_word", &drop_first),
        task("last_char", &last),
        task("strip_digit_prefix", &DIGIT_PREFIXED),
        task("area_code", &PHONES),
    ]
}
