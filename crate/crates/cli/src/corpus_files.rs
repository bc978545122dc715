//! The built-in corpus as self-contained text files.

use std::sync::Arc;

use tgw_core::exactness::{kernel_pair, quotient};
use tgw_core::simplicial::SimplicialModule;
use tgw_core::spectrum::TriadicSheaf;
use tgw_core::{corpus, product_module, projection, Result, TernaryGammaModule, WorkbenchConfig};

use crate::format::Document;

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect::<String>()
        .trim_matches('_')
        .to_string()
}

/// `MB1 × MB1` modulo the kernel pair of the first projection.
pub fn quotient_fixture() -> Result<TernaryGammaModule> {
    let m = Arc::new(corpus::mb1());
    let p = Arc::new(product_module(&m, &m, 16)?);
    let (q, _) = quotient(&kernel_pair(&projection(&p, 0)?))?;
    Ok(q.materialize().renamed("MB1xMB1/ker"))
}

/// MB1 with the entry `(1, g, 0, g, 1)` of the action overwritten to 1.
pub fn mutated_mb1() -> Result<TernaryGammaModule> {
    Ok(corpus::mb1().with_action_entry([1, 0, 0, 0, 1], 1)?.renamed("MB1MUT"))
}

/// `(file name, canonical text)` for every corpus item, sorted by name.
pub fn corpus_files(cfg: &WorkbenchConfig) -> Result<Vec<(String, String)>> {
    let mut files = Vec::new();
    let mut emit = |file: String, doc: Document| files.push((file, doc.serialize()));
    for s in [
        corpus::triv(),
        corpus::b1(),
        corpus::z3(),
        corpus::mut1(),
        corpus::b1_two_gammas(),
        corpus::b1_squared(),
    ] {
        let mut d = Document::default();
        d.add_semiring(&Arc::new(s.clone()))?;
        emit(format!("{}.tga", file_stem(s.name())), d);
    }
    let mut modules = corpus::modules();
    modules.push(quotient_fixture()?);
    modules.push(mutated_mb1()?);
    for m in &modules {
        let m = Arc::new(m.clone());
        let mut d = Document::default();
        d.add_module(&m)?;
        emit(format!("{}.tga", file_stem(m.name())), d);
    }
    for f in [corpus::swap_mb1(), corpus::diagonal_mb1(), corpus::doubling_z3()] {
        let mut d = Document::default();
        d.add_morphism(&f)?;
        emit(format!("{}.tgm", file_stem(f.name())), d);
    }
    for m in corpus::modules() {
        let x = Arc::new(SimplicialModule::constant(Arc::new(m), cfg.truncation));
        let mut d = Document::default();
        d.add_simplicial(&x)?;
        emit(format!("{}.tgs", file_stem(x.name())), d);
    }
    for (stem, f) in [
        ("z3_angle", corpus::z3_angle_base(cfg.truncation)),
        ("b1_angle", corpus::b1_angle_base(cfg.truncation)),
    ] {
        let mut d = Document::default();
        d.add_simplicial_map(&f)?;
        emit(format!("{stem}.tgs"), d);
    }
    let sheaf = corpus::z3_two_point_sheaf();
    let mut presheaf = TriadicSheaf::constant_presheaf(corpus::two_point_space(), Arc::new(corpus::mz3()))?;
    presheaf.name = "Z3_constant_presheaf".into();
    for f in [sheaf, presheaf] {
        let mut d = Document::default();
        d.add_sheaf(&f)?;
        emit(format!("{}.tgf", f.name), d);
    }
    files.sort();
    Ok(files)
}
