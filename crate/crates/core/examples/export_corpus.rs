//! Writes the bundled corpus as instance files, one morphism of monads per
//! file, plus the malformed fixtures used by the command-line tests.
//!
//! Usage: `export_corpus <corpus-dir> <fixtures-dir>`

use std::path::PathBuf;

use pbw_core::corpus;
use pbw_core::fincat::NatTransData;
use pbw_core::instance::InstanceFile;
use pbw_core::monad::MonadData;
use pbw_core::psimorph::classical_embed;

fn identity_on(
    c: std::sync::Arc<pbw_core::fincat::FinCategory>,
) -> pbw_core::psimorph::PsiMorphismData {
    let m = MonadData::identity(c);
    classical_embed(&m, &m, &NatTransData::identity(&m.endo)).expect("identity morphism")
}

fn main() -> pbw_core::Result<()> {
    let args: Vec<PathBuf> = std::env::args_os().skip(1).map(PathBuf::from).collect();
    let [corpus_dir, fixtures_dir] = &args[..] else {
        eprintln!("usage: export_corpus <corpus-dir> <fixtures-dir>");
        std::process::exit(2);
    };
    std::fs::create_dir_all(corpus_dir).expect("corpus dir");
    std::fs::create_dir_all(fixtures_dir).expect("fixtures dir");

    let entries = corpus::bundled();
    for e in &entries {
        InstanceFile::from_psi("", &e.name, &e.p)
            .write(&corpus_dir.join(format!("{}.json", e.name)))?;
    }
    InstanceFile::from_psi("", "identity-arrow", &identity_on(corpus::arrow()))
        .write(&fixtures_dir.join("identity-arrow.json"))?;

    // η on the one-object group sends the object to the flip, so μ∘ηT ≠ id
    let mut broken = InstanceFile::from_psi("", "broken-unit", &identity_on(corpus::z2()));
    let eta = broken.nat_trans.get_mut("eta_S").expect("eta_S");
    eta.components.insert("*".into(), "s".into());
    broken.write(&fixtures_dir.join("broken-unit.json"))?;

    InstanceFile::from_psi("", "ret2-identity", &identity_on(corpus::two_retractions()))
        .write(&fixtures_dir.join("missing-coequalizer.json"))?;

    eprintln!("wrote {} corpus files", entries.len());
    Ok(())
}
