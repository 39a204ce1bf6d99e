//! Named expressions from the case studies, referenced as `@name` or
//! `@name(arg)` in any expression flag. `@name(arg)` substitutes `arg`
//! for the preset's variable.

use branchwise::expr::Mode;

pub struct Preset {
    pub name: &'static str,
    pub mode: Mode,
    pub text: &'static str,
    pub about: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "kahan-g",
        mode: Mode::Complex,
        text: "2*arccosh(1 + 2*z/3) - arccosh((5*z + 12)/(3*(z + 4)))",
        about: "Kahan's g",
    },
    Preset {
        name: "kahan-q",
        mode: Mode::Complex,
        text: "2*arccosh(2*(z + 3)*sqrt((z + 3)/(27*(z + 4))))",
        about: "Kahan's q, equal to g outside a teardrop",
    },
    Preset {
        name: "kahan-h",
        mode: Mode::Complex,
        text: "2*log(sqrt(3*z + 12)*(sqrt(z + 3) + sqrt(z))^2/(3*(2*sqrt(z + 3) + sqrt(z))))",
        about: "Kahan's h, equal to g everywhere",
    },
    Preset { name: "joukowski-f", mode: Mode::Complex, text: "(z + 1/z)/2", about: "Joukowski map" },
    Preset {
        name: "joukowski-f2",
        mode: Mode::Complex,
        text: "z + sqrt(z - 1)*sqrt(z + 1)",
        about: "inverse candidate for |z| > 1",
    },
    Preset {
        name: "joukowski-f4",
        mode: Mode::Complex,
        text: "z + sqrt(z - 1)*I*sqrt(-z - 1)",
        about: "inverse candidate for Im z > 0",
    },
    Preset {
        name: "arctan-add",
        mode: Mode::Real,
        text: "arctan(x) + arctan(y) - arctan((x + y)/(1 - x*y))",
        about: "defect of the arctan addition formula",
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

fn is_ident(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Replaces whole-word `var` in `text` by `(by)`.
fn substitute(text: &str, var: &str, by: &str) -> String {
    let cs: Vec<char> = text.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < cs.len() {
        if is_ident(cs[i]) {
            let st = i;
            while i < cs.len() && is_ident(cs[i]) {
                i += 1;
            }
            let w: String = cs[st..i].iter().collect();
            if w == var {
                out.push('(');
                out.push_str(by);
                out.push(')');
            } else {
                out.push_str(&w);
            }
        } else {
            out.push(cs[i]);
            i += 1;
        }
    }
    out
}

/// Expands preset references. Unknown names are an error.
pub fn expand(text: &str) -> Result<String, String> {
    let cs: Vec<char> = text.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < cs.len() {
        if cs[i] != '@' {
            out.push(cs[i]);
            i += 1;
            continue;
        }
        let st = i + 1;
        i = st;
        while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '-') {
            i += 1;
        }
        let name: String = cs[st..i].iter().collect();
        let p = find(&name).ok_or_else(|| format!("unknown preset `@{name}`"))?;
        let body = if i < cs.len() && cs[i] == '(' {
            let mut depth = 0;
            let open = i;
            loop {
                match cs.get(i) {
                    Some('(') => depth += 1,
                    Some(')') => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    Some(_) => {}
                    None => return Err(format!("unbalanced parenthesis after `@{name}`")),
                }
                i += 1;
            }
            let arg: String = cs[open + 1..i].iter().collect();
            i += 1;
            if p.mode == Mode::Real {
                return Err(format!("`@{name}` has two variables and takes no argument"));
            }
            substitute(p.text, "z", &expand(&arg)?)
        } else {
            p.text.to_string()
        };
        out.push('(');
        out.push_str(&body);
        out.push(')');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use branchwise::expr::parse;

    #[test]
    fn every_preset_parses() {
        for p in PRESETS {
            parse(p.text, p.mode).unwrap_or_else(|e| panic!("{}: {e}", p.name));
        }
    }

    #[test]
    fn expansion_and_composition() {
        assert_eq!(expand("@joukowski-f").unwrap(), "((z + 1/z)/2)");
        let c = expand("@joukowski-f2(@joukowski-f)").unwrap();
        assert_eq!(c, "((((z + 1/z)/2)) + sqrt((((z + 1/z)/2)) - 1)*sqrt((((z + 1/z)/2)) + 1))");
        assert!(parse(&c, Mode::Complex).is_ok());
        assert_eq!(expand("2*z + 1").unwrap(), "2*z + 1");
        assert!(expand("@nope").is_err());
        assert!(expand("@joukowski-f(z").is_err());
    }

    #[test]
    fn substitution_is_whole_word() {
        assert_eq!(substitute("sqrt(z) + zz", "z", "w+1"), "sqrt((w+1)) + zz");
    }
}
