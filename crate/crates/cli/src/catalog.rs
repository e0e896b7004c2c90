//! Bundled scenarios and data files, embedded at compile time so every
//! subcommand can run without external inputs. Names are stable; hashes are
//! of the embedded bytes.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryKind {
    Algebra,
    Extension,
    Scenario,
    Groupoid,
    Pfaffian,
}

impl EntryKind {
    pub fn label(self) -> &'static str {
        match self {
            EntryKind::Algebra => "algebra",
            EntryKind::Extension => "extension",
            EntryKind::Scenario => "scenario",
            EntryKind::Groupoid => "groupoid",
            EntryKind::Pfaffian => "pfaffian",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Entry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub content: &'static str,
}

pub const ENTRIES: &[Entry] = &[
    Entry { name: "hei3", kind: EntryKind::Algebra, content: include_str!("../assets/hei3.toml") },
    Entry {
        name: "euclidean_abelian",
        kind: EntryKind::Scenario,
        content: include_str!("../assets/euclidean_abelian.toml"),
    },
    Entry {
        name: "contact_hei",
        kind: EntryKind::Scenario,
        content: include_str!("../assets/contact_hei.toml"),
    },
    Entry {
        name: "contact_abelian",
        kind: EntryKind::Scenario,
        content: include_str!("../assets/contact_abelian.toml"),
    },
    Entry {
        name: "sp11_hei3_extension",
        kind: EntryKind::Extension,
        content: include_str!("../assets/sp11_hei3_extension.toml"),
    },
    Entry {
        name: "jet2_model",
        kind: EntryKind::Scenario,
        content: include_str!("../assets/jet2_model.toml"),
    },
    Entry {
        name: "jet2_tower",
        kind: EntryKind::Pfaffian,
        content: include_str!("../assets/jet2_tower.toml"),
    },
    Entry {
        name: "translations_groupoid",
        kind: EntryKind::Groupoid,
        content: include_str!("../assets/translations_groupoid.toml"),
    },
    Entry {
        name: "heisenberg_groupoid",
        kind: EntryKind::Groupoid,
        content: include_str!("../assets/heisenberg_groupoid.toml"),
    },
];

pub fn find(name: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.name == name)
}
