//! Plain-text math to LaTeX. The core renderers emit ASCII like
//! `c0*cbar0*(t^-4 + 2 + t^4)` or `K0^2 K1^-2 E0 F1`; this module rewrites
//! identifiers and exponents into math-mode form. Purely lexical: the
//! grammar of the rendered strings is small and stable.

/// One identifier-with-digits token to LaTeX.
fn ident(name: &str, digits: &str) -> String {
    if digits.is_empty() {
        return match name {
            "cbar" => "\\overline{c}".to_string(),
            _ => name.to_string(),
        };
    }
    match name {
        "t" | "z" | "q" => format!("{name}_{{{digits}}}"),
        "c" => format!("c_{{{digits}}}"),
        "cbar" => format!("\\overline{{c}}_{{{digits}}}"),
        "w" => format!("w_{{{digits}}}"),
        "K" => format!("K_{{{digits}}}"),
        "E" => format!("e_{{{digits}}}"),
        "F" => format!("f_{{{digits}}}"),
        "A" => format!("\\mathsf{{A}}_{{{digits}}}"),
        "quad" => format!("Q^{{({digits})}}"),
        _ => {
            if let Some(rest) = name.strip_prefix("rho") {
                format!("\\rho^{{{rest}}}_{{{digits}}}")
            } else if digits.is_empty() {
                name.to_string()
            } else {
                format!("\\mathrm{{{name}}}_{{{digits}}}")
            }
        }
    }
}

/// Rewrites a rendered scalar, monomial, or polynomial string.
pub fn latexify(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 16);
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let tok: String = chars[start..i].iter().collect();
            let split = tok
                .char_indices()
                .rev()
                .take_while(|(_, ch)| ch.is_ascii_digit())
                .last()
                .map(|(p, _)| p)
                .unwrap_or(tok.len());
            let (name, digits) = tok.split_at(split);
            // `rho0_01` carries its own underscore-separated pair part.
            if name.starts_with("rho") && i < chars.len() && chars[i] == '_' {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let pair: String = chars[i + 1..j].iter().collect();
                out.push_str(&format!("\\rho^{{{digits}}}_{{{pair}}}"));
                i = j;
            } else if digits.is_empty() {
                out.push_str(&ident(name, ""));
            } else {
                out.push_str(&ident(name, digits));
            }
        } else if c == '^' {
            let start = i + 1;
            let mut j = start;
            if j < chars.len() && chars[j] == '-' {
                j += 1;
            }
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let exp: String = chars[start..j].iter().collect();
            out.push_str(&format!("^{{{exp}}}"));
            i = j;
        } else if c == '*' {
            out.push_str("\\,");
            i += 1;
        } else {
            out.push(c);
            i += 1;
        }
    }
    out
}

/// `(x) ` tensor markers from the comodule renderer.
pub fn latexify_tensor(s: &str) -> String {
    latexify(s).replace("(x)", "\\otimes")
}
