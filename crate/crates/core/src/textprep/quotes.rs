use super::tokenize::is_quote_char;

fn is_quote_token(text: &str) -> bool {
    let mut chars = text.chars();
    matches!((chars.next(), chars.next()), (Some(c), None) if is_quote_char(c))
}

/// Flags tokens lying strictly between consecutive pairs of double-quote
/// tokens. Quotes pair up left to right across the whole document; a final
/// unmatched opening quote flags nothing.
pub fn mark_quotes<S: AsRef<str>>(tokens: &[S]) -> Vec<bool> {
    let mut flags = vec![false; tokens.len()];
    let mut open: Option<usize> = None;
    for (i, tok) in tokens.iter().enumerate() {
        if !is_quote_token(tok.as_ref()) {
            continue;
        }
        match open.take() {
            None => open = Some(i),
            Some(start) => flags[start + 1..i].iter_mut().for_each(|f| *f = true),
        }
    }
    flags
}
