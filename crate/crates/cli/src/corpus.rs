//! Page trees on disk: one UTF-8 text file per page, paired by relative path.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use htreval::{tokenize_page, PageTranscript};
use walkdir::WalkDir;

pub const PAGE_EXTENSION: &str = "txt";

/// A page file found under a corpus root.
#[derive(Debug, Clone)]
pub struct PageFile {
    /// Relative path with `/` separators; doubles as the page id.
    pub id: String,
    pub path: PathBuf,
}

/// Lists `*.txt` files below `root`, sorted by page id. Hidden entries are
/// skipped.
pub fn list_pages(root: &Path) -> Result<Vec<PageFile>> {
    if !root.is_dir() {
        bail!("{} is not a directory", root.display());
    }
    let mut pages = Vec::new();
    let walker = WalkDir::new(root)
        .follow_links(true)
        .into_iter()
        .filter_entry(|e| e.depth() == 0 || !e.file_name().to_string_lossy().starts_with('.'));
    for entry in walker {
        let entry = entry.with_context(|| format!("walking {}", root.display()))?;
        let path = entry.path();
        if !entry.file_type().is_file() || path.extension().and_then(|e| e.to_str()) != Some(PAGE_EXTENSION) {
            continue;
        }
        let rel = path.strip_prefix(root).expect("walkdir yields paths under root");
        let id = rel
            .components()
            .map(|c| c.as_os_str().to_string_lossy())
            .collect::<Vec<_>>()
            .join("/");
        pages.push(PageFile {
            id,
            path: path.to_path_buf(),
        });
    }
    pages.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(pages)
}

/// Reads and tokenizes one page; I/O and encoding problems become
/// messages tagged with the page id.
pub fn read_page(path: &Path, id: &str) -> std::result::Result<(PageTranscript, Vec<u8>), String> {
    let raw = fs::read(path).map_err(|e| format!("page {id}: cannot read {}: {e}", path.display()))?;
    let page = tokenize_page(&raw, id).map_err(|e| e.on_page(id).to_string())?;
    Ok((page, raw))
}

/// Path of page `id` under `root`.
pub fn page_path(root: &Path, id: &str) -> PathBuf {
    id.split('/').fold(root.to_path_buf(), |p, c| p.join(c))
}
