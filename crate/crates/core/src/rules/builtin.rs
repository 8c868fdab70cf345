use std::path::Path;

use super::{check_agreement, CharacteristicsCatalog, PatternRule};

/// (file stem, rule text, catalog text) for the seven shipped patterns.
pub(crate) const SHIPPED: [(&str, &str, &str); 7] = [
    (
        "simplefactory",
        include_str!("../../patterns/simplefactory.rules"),
        include_str!("../../patterns/simplefactory.chars"),
    ),
    (
        "factorymethod",
        include_str!("../../patterns/factorymethod.rules"),
        include_str!("../../patterns/factorymethod.chars"),
    ),
    (
        "adapter",
        include_str!("../../patterns/adapter.rules"),
        include_str!("../../patterns/adapter.chars"),
    ),
    (
        "decorator",
        include_str!("../../patterns/decorator.rules"),
        include_str!("../../patterns/decorator.chars"),
    ),
    (
        "observer",
        include_str!("../../patterns/observer.rules"),
        include_str!("../../patterns/observer.chars"),
    ),
    (
        "state",
        include_str!("../../patterns/state.rules"),
        include_str!("../../patterns/state.chars"),
    ),
    (
        "strategy",
        include_str!("../../patterns/strategy.rules"),
        include_str!("../../patterns/strategy.chars"),
    ),
];

/// The seven pattern definitions shipped with the tool.
pub fn builtin_catalogs() -> Vec<(PatternRule, CharacteristicsCatalog)> {
    SHIPPED
        .iter()
        .map(|(stem, rules, chars)| {
            let rule_path = Path::new(stem).with_extension("rules");
            let chars_path = Path::new(stem).with_extension("chars");
            let rule = PatternRule::parse(rules, &rule_path).expect("shipped rule file is valid");
            let catalog = CharacteristicsCatalog::parse(chars, &chars_path).expect("shipped catalog is valid");
            check_agreement(&rule, &catalog, &chars_path).expect("shipped rule and catalog agree");
            (rule, catalog)
        })
        .collect()
}

/// Writes the shipped `.rules`/`.chars` files into `dir`.
pub fn write_builtin_files(dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (stem, rules, chars) in SHIPPED {
        std::fs::write(dir.join(format!("{stem}.rules")), rules)?;
        std::fs::write(dir.join(format!("{stem}.chars")), chars)?;
    }
    Ok(())
}
