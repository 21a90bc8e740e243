use echotrace::textprep::{normalize_text, DocKind};

const FOOTNOTE: &str = "Hello, users of CMV! This is a footnote from your moderators. We’d just like to remind you of a couple of things. Firstly, please remember to read through our rules. If you see a comment that has broken one, it is more effective to report it than downvote it. Speaking of which, *downvotes don’t change views**! If you are thinking about submitting a CMV yourself, please have a look through our **popular topics wiki first. Any questions or concerns? Feel free to message us**. Happy CMVing!*";

fn cases() -> Vec<(DocKind, String, &'static str)> {
    vec![
        (DocKind::Pc, format!("I changed my view.\n{FOOTNOTE}"), "I changed my view."),
        (DocKind::Pc, FOOTNOTE.to_string(), ""),
        (DocKind::Op, "see r/ideasforcmv, /r/nba".into(), "see ideasforcmv, nba"),
        (DocKind::Op, "source: https://www.quora.com/profile/".into(), "source: @url@"),
        (DocKind::Op, "https://www.quora.com/profile/".into(), "@url@"),
        (DocKind::Pc, "thanks u/Ansuz07".into(), "thanks Ansuz07"),
        (
            DocKind::Op,
            "Voting matters.\nEDIT for clarification: This isn't to suggest that you have to remain financially independent to vote".into(),
            "Voting matters.",
        ),
        (DocKind::Op, "Edit: typo\nrest".into(), "rest"),
        (DocKind::Explanation, "!delta that helped".into(), "that helped"),
        (DocKind::Explanation, "Δ Great point about taxes".into(), "Great point about taxes"),
        (DocKind::Explanation, "&;#8710; thanks".into(), "thanks"),
        (DocKind::Explanation, "you earned a δ".into(), "you earned a delta"),
        (DocKind::Op, "I award a Δ here".into(), "I award a delta here"),
        (
            DocKind::Pc,
            "> Taxes are theft.\n\nThat is not true.".into(),
            "\"Taxes are theft.\" That is not true.",
        ),
        (
            DocKind::Pc,
            "&gt; first line\n&gt; second line\nreply".into(),
            "\"first line second line\" reply",
        ),
        (DocKind::Op, "a\t\tb\r\nc -- d *** e __ f".into(), "a b c - d * e _ f"),
    ]
}

#[test]
fn sample_data_normalizes_byte_exact() {
    for (kind, input, want) in cases() {
        let got = normalize_text(&input, kind);
        assert_eq!(got.as_str(), want, "input {input:?}");
    }
}

#[test]
fn normalization_is_idempotent_on_goldens() {
    for (kind, input, _) in cases() {
        let once = normalize_text(&input, kind);
        let twice = normalize_text(once.as_str(), kind);
        assert_eq!(once, twice, "input {input:?}");
    }
}
