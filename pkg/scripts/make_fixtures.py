#!/usr/bin/env python3
"""Generate the bundled fixture set under fixtures/.

Everything here is synthetic and deterministic: four source ontologies
(a commercial-determinants component plus social/equity/time ontologies),
the merged 611-class ontology with CURIE annotations, evaluation sheets,
two completed judgment files realizing the published agreement table, and
a reconstructed 60-session concordance corpus totalling 276 prompts.

Regenerating produces byte-identical files; every structural target is
asserted before anything is written.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))

from ontokit.agreement import (cohens_kappa, confusion_matrix, fisher_exact,  # noqa: E402
                               ratings_from_judgments)
from ontokit.graph import build_graph, structural_audit  # noqa: E402
from ontokit.ingest import build_model, tally_from_model  # noqa: E402
from ontokit.merge import MergePolicy, annotate_curies, merge  # noqa: E402
from ontokit.model import (AxiomTally, ClassDecl, Literal, OntologyModel,  # noqa: E402
                           PropertyDecl, normalize_annotations)
from ontokit.pairs import (export_sheet, import_judgments, sample_pairs,  # noqa: E402
                           sheet_manifest)
from ontokit.rdfxml import parse_rdfxml  # noqa: E402
from ontokit.validator import (Outcome, ProtocolConfig, SessionResult,  # noqa: E402
                               Transcript, Turn, aggregate, classify_outcome,
                               write_transcript)
from ontokit.validator.signals import match_enumeration  # noqa: E402
from ontokit.vocab import CORE_PREFIXES, RDFS, XSD  # noqa: E402
from ontokit.writer import write_rdfxml_file  # noqa: E402

FIXTURES = REPO / "fixtures"

CDOH_NS = "https://w3id.org/ncodh/cdoh#"
SDOH_NS = "https://w3id.org/ncodh/sdoh#"
HOME_NS = "https://w3id.org/ncodh/home#"
TEO_NS = "https://w3id.org/ncodh/teo#"
NCODH_NS = "https://w3id.org/ncodh#"

SOURCE_PREFIXES = {"cdoh": CDOH_NS, "sdoh": SDOH_NS, "home": HOME_NS, "teo": TEO_NS}

SEED_SHEET_90 = 20230415
SEED_SHEET_60 = 20230601
SEED_CORPUS_TEXT = 20230707

# class budgets: 5 + 312 = 317 commercial-component classes; the merged
# ontology adds 180 + 74 + 40 = 294 more for a total of 611
CDOH_BUDGETS = {
    "Elements attributed by commercial factors": 70,
    "Elements attributed by economic factors": 58,
    "Elements attributed by environmental factors": 64,
    "Elements attributed by individual factors": 56,
    "Elements attributed by social factors": 64,
}
SDOH_BUDGET = 179   # descendants of the social-determinants root
HOME_BUDGET = 73    # descendants of the healthcare-equity root
TEO_BUDGET = 39     # descendants of the time-event root


# ---------------------------------------------------------------------------
# hand-written tree nuclei: (label, [children]) nested pairs
# ---------------------------------------------------------------------------

def N(label, children=()):
    return (label, list(children))


CDOH_NUCLEUS = {
    "Elements attributed by commercial factors": [
        N("Marketing practices harmful to health", [
            N("Marketing of unhealthy food products", [
                N("Cartoon branding of sugary cereals"),
                N("In-school promotion of snack products"),
                N("Toy giveaways bundled with fast food"),
            ]),
            N("Aggressive promotion of tobacco products", [
                N("Point-of-sale tobacco displays"),
                N("Flavoured tobacco lines aimed at new smokers"),
            ]),
            N("Alcohol sponsorship of sporting events"),
            N("Influencer endorsement of vaping devices"),
        ]),
        N("Trade and globalisation effect on health disparities", [
            N("Exploitative labour practices in global supply chains", [
                N("Violating labour standards"),
                N("Suppressing collective bargaining in supplier factories"),
            ]),
            N("Dumping of low nutrition exports in emerging markets"),
            N("Patent driven barriers to essential medicines"),
        ]),
        N("Product design fostering overconsumption", [
            N("Hyper-palatable food formulation"),
            N("Loot box mechanics in games played by minors"),
            N("Single serve packaging that encourages repeat purchase"),
        ]),
        N("Corporate concealment of product risk", [
            N("Suppressed internal safety studies"),
            N("Industry funded doubt campaigns"),
        ]),
    ],
    "Elements attributed by economic factors": [
        N("Profit motivated labour market pressure", [
            N("Wage levels below living costs"),
            N("Erosion of employment protections"),
            N("Zero hour contracting in service sectors"),
        ]),
        N("Market concentration limiting healthy choice", [
            N("Supermarket shelf dominance of processed foods"),
            N("Pricing healthy staples above processed substitutes"),
        ]),
        N("Financialization of basic needs", [
            N("Speculation driven food price spikes"),
            N("Rent extraction from low income housing"),
        ]),
    ],
    "Elements attributed by environmental factors": [
        N("Effect of climatic changes", [
            N("Heat stress from industrial heat island effects"),
            N("Displacement after extreme weather events"),
        ]),
        N("Chemical risk in drinking water", [
            N("Chemical contaminant in drinking water", [
                N("Radon in drinking water"),
                N("Fluoride above recommended levels in drinking water"),
                N("Lead leaching from service lines"),
            ]),
            N("Available source of drinking water", [
                N("Municipal tap water supply"),
                N("Private well water supply"),
            ]),
        ]),
        N("Industrial pollution burden on communities", [
            N("Air quality degradation near industrial zones"),
            N("Soil contamination from waste disposal"),
        ]),
    ],
    "Elements attributed by individual factors": [
        N("Eating related psychopathology", [
            N("Binge eating disorder"),
            N("Restrictive dieting driven by advertising ideals"),
        ]),
        N("Commercially reinforced risk behavior", [
            N("Tobacco use sustained by targeted promotions"),
            N("Harmful alcohol consumption encouraged by price promotions"),
            N("Physical inactivity reinforced by screen centred leisure"),
            N("Unhealthy diet shaped by convenience food defaults"),
        ]),
        N("Consumer debt stress affecting health", [
            N("Predatory lending dependence"),
            N("Buy now pay later overextension"),
        ]),
    ],
    "Elements attributed by social factors": [
        N("Social media affected health outcomes", [
            N("Body image distortion from curated feeds"),
            N("Health misinformation in engagement driven feeds"),
        ]),
        N("Commercially shaped social norms", [
            N("Normalization of energy drink consumption among teens"),
            N("Drinking culture sustained by alcohol marketing"),
        ]),
        N("Community disruption by commercial development", [
            N("Displacement of local food markets by chains"),
            N("Loss of public recreation space to development"),
        ]),
    ],
}

CDOH_FILLERS = {
    "Elements attributed by commercial factors": (
        "Marketing practices harmful to health",
        [("{m} advertising of {p}",
          ["Television", "Online", "Outdoor billboard", "In-store", "Cinema",
           "Event based"],
          ["sugary drinks", "fast food", "tobacco products", "alcoholic beverages",
           "vaping devices", "gambling services", "energy drinks", "infant formula"]),
         ("{m} by the {p} industry",
          ["Misleading health claims", "Lobbying against health regulation",
           "Youth targeted promotion", "Obscured ingredient disclosure"],
          ["processed food", "beverage", "tobacco", "alcohol", "gambling",
           "pharmaceutical"])],
    ),
    "Elements attributed by economic factors": (
        "Profit motivated labour market pressure",
        [("{m} driven by {p}",
          ["Wage suppression", "Precarious employment growth",
           "Informal labour expansion", "Household debt accumulation",
           "Staple food price inflation"],
          ["market consolidation", "outsourcing", "deregulation",
           "speculative investment", "monopoly pricing", "shareholder primacy",
           "austerity budgeting"]),
         ("{m} shifted onto {p}",
          ["Healthcare costs", "Disability costs", "Pollution cleanup costs",
           "Retraining costs"],
          ["public budgets", "local communities", "individual households",
           "future generations"])],
    ),
    "Elements attributed by environmental factors": (
        "Industrial pollution burden on communities",
        [("{m} contamination of {p}",
          ["Pesticide", "Heavy metal", "Microplastic", "Industrial solvent",
           "Pharmaceutical residue", "Nitrate"],
          ["groundwater", "surface water", "agricultural soil",
           "coastal fisheries", "urban air", "indoor air"]),
         ("{m} exposure near {p}",
          ["Respiratory hazard", "Carcinogen", "Noise burden", "Odour nuisance"],
          ["smelters", "refineries", "landfills", "freight corridors",
           "industrial farms"])],
    ),
    "Elements attributed by individual factors": (
        "Commercially reinforced risk behavior",
        [("{m} reinforced by {p}",
          ["Sedentary recreation", "Ultra processed snacking",
           "Energy drink dependence", "Late night screen use",
           "Impulse purchasing of alcohol"],
          ["habit forming design", "reward programs", "targeted discounts",
           "push notifications", "feed algorithms", "loyalty schemes"]),
         ("{m} related consumer harm",
          ["Nicotine addiction", "Gambling addiction", "Gaming disorder",
           "Compulsive shopping"], [""]),
         ("{m} sustained by {p}",
          ["Vaping habit", "Fast food reliance", "Sports betting habit",
           "Binge streaming routine"],
          ["free samples", "introductory pricing", "gamified rewards",
           "peer referral bonuses"])],
    ),
    "Elements attributed by social factors": (
        "Commercially shaped social norms",
        [("{m} amplified by {p}",
          ["Body image dissatisfaction", "Health misinformation spread",
           "Cyberbullying exposure", "Comparison driven anxiety",
           "Normalization of risky drinking"],
          ["short video platforms", "photo sharing apps", "gaming communities",
           "messaging groups", "celebrity endorsements", "viral challenges"]),
         ("{m} widened by commercial media",
          ["Generational divides", "Urban rural divides", "Income based divides",
           "Language based divides"], [""]),
         ("{m} normalized through {p}",
          ["Vaping among students", "Sports betting", "Cosmetic procedures",
           "Crash dieting", "Energy drink stacking"],
          ["influencer content", "reality television", "sponsored challenges",
           "peer sharing loops", "branded filters"])],
    ),
}

SDOH_ROOT = "Social determinants of health"
SDOH_NUCLEUS = [
    N("Housing instability and quality", [
        N("Poor housing", [
            N("Pest infested house"),
            N("Overcrowding in house"),
            N("Lack of basic amenities in housing"),
            N("Exposure to environmental hazards in housing"),
            N("Lack of ventilation in housing"),
        ]),
        N("Homelessness"),
        N("Frequent forced moves"),
    ]),
    N("Impact of food insecurity", [
        N("Metabolic disturbances from poor nutrition"),
        N("Skipped meals in low income households"),
        N("Reliance on shelf stable processed foods"),
    ]),
    N("Economic instability", [
        N("Inability to enroll in federal assistance"),
        N("Job loss without severance protection"),
        N("Medical debt driven bankruptcy risk"),
    ]),
    N("Neighborhood and built-in environment", [
        N("Proximity to industrial facilities"),
        N("Transportation access to farmers market"),
        N("Absence of safe walking routes"),
        N("Limited green space access"),
    ]),
    N("Education access and quality", [
        N("Educational attainment level"),
        N("Bullying at school"),
        N("Under resourced school facilities"),
    ]),
    N("Poor Workplace condition", [
        N("Poor pairing of team members at work"),
        N("Occupational hazard exposure"),
        N("Fear of deportation of illegal workers in hazardous jobs"),
    ]),
    N("Social and community context", [
        N("Person affected by nonclinical determinants"),
        N("Social isolation of caregivers"),
        N("Community support network erosion"),
    ]),
    N("Health care access and quality", [
        N("Delayed preventive screening"),
        N("Uninsured adult population"),
    ]),
]
SDOH_FILLER_ATTACH = "Social and community context"
SDOH_FILLERS = [
    ("{m} among {p}",
     ["Limited access to preventive screening", "Unstable shift work",
      "Chronic rent arrears", "Utility shutoff risk", "Food desert residence",
      "Crowded multigenerational housing", "Long commute burden",
      "Digital exclusion from services", "Low health literacy",
      "Persistent social isolation"],
     ["single parent households", "elderly residents", "rural communities",
      "recent immigrants", "low income workers", "night shift workers",
      "adolescents", "unhoused populations"]),
    ("{m} to {p}",
     ["Transportation barriers", "Cost barriers", "Language barriers",
      "Scheduling barriers", "Documentation barriers", "Childcare barriers"],
     ["primary care", "dental care", "mental health services", "maternal care",
      "vaccination programs", "substance use treatment", "specialist referral",
      "health insurance enrollment"]),
    ("{m} in {p}",
     ["Secondhand smoke exposure", "Noise pollution exposure",
      "Lead paint exposure", "Mold exposure", "Extreme heat exposure"],
     ["public housing", "schools", "workplaces", "rental apartments",
      "shelters"]),
]

HOME_ROOT = "Healthcare equity for minorities"
HOME_NUCLEUS = [
    N("Implicit bias in clinical encounters", [
        N("Pain undertreatment linked to implicit bias"),
        N("Dismissal of reported symptoms"),
        N("Delayed care due to implicit bias"),
    ]),
    N("Language access barriers in care", [
        N("Unavailable medical interpretation"),
        N("Untranslated discharge instructions"),
    ]),
    N("Structural barriers to equitable care", [
        N("Clinic deserts in minority neighborhoods"),
        N("Insurance tiering that limits specialist access"),
    ]),
]
HOME_FILLER_ATTACH = "Structural barriers to equitable care"
HOME_FILLERS = [
    ("{m} affecting {p}",
     ["Diagnostic bias", "Pain assessment bias", "Triage bias", "Referral bias",
      "Treatment intensity bias", "Communication bias"],
     ["Black patients", "Hispanic patients", "Indigenous patients",
      "immigrant patients", "non native speakers", "elderly minority patients",
      "LGBTQ patients", "disabled patients", "low income patients",
      "rural minority patients", "Asian patients", "Pacific Islander patients"]),
]

TEO_ROOT = "Time event"
TEO_NUCLEUS = [
    N("Time instant", [
        N("Onset instant of an exposure"),
        N("Resolution instant of an episode"),
    ]),
    N("Time interval", [
        N("Bounded exposure interval"),
        N("Open ended monitoring interval"),
    ]),
    N("Event sequence", [
        N("Ordered diagnostic event sequence"),
    ]),
]
TEO_FILLER_ATTACH = "Time interval"
TEO_FILLERS = [
    ("{m} of {p}",
     ["Recurring interval", "Split interval", "Overlapping interval",
      "Nested interval", "Anchored interval"],
     ["exposure events", "treatment episodes", "follow up visits",
      "symptom onsets", "policy changes", "screening cycles",
      "outbreak waves", "enrollment periods"]),
]

# object properties (27 in the commercial component, 41 after the merge)
CDOH_OBJECT_PROPS = [
    "have_education_level", "have_contaminants", "has_marketing_exposure",
    "influences_consumer_behavior", "produces_commodity", "distributes_product",
    "employs_worker", "lobbies_against", "sponsors_event", "targets_population",
    "pollutes_resource", "extracts_resource", "prices_product",
    "advertises_through", "supplies_retailer", "funds_research", "shapes_policy",
    "exposes_to_hazard", "restricts_access_to", "promotes_consumption_of",
    "externalizes_cost_to", "operates_in_region", "drives_demand_for",
    "conceals_risk_of", "undermines_regulation_of", "profits_from",
    "relocates_production_to",
]
CDOH_DATA_PROPS = [
    "advertising_spend_usd", "sugar_content_grams", "alcohol_by_volume",
    "nicotine_content_mg", "employment_count", "average_wage_usd",
    "working_hours_per_week", "emission_tonnes_per_year", "market_share_percent",
    "price_usd", "tax_rate_percent", "shelf_visibility_score",
    "outlet_density_per_km2", "sponsorship_amount_usd", "lobbying_spend_usd",
    "product_recall_count", "injury_rate_per_1000", "caloric_density_kcal",
    "screen_time_minutes",
]
SDOH_OBJECT_PROPS = [
    "has_housing_condition", "resides_in_neighborhood",
    "experiences_food_insecurity", "has_income_level", "attends_school",
    "commutes_via", "receives_assistance_from", "works_under_condition",
    "exposed_to_violence", "supported_by_community",
]
SDOH_DATA_PROPS = [
    "household_income_usd", "rent_burden_percent", "distance_to_grocery_km",
    "years_of_education", "unemployment_rate_percent", "crowding_index",
]
HOME_OBJECT_PROPS = ["experiences_bias_from", "denied_service_by", "interpreted_by"]
HOME_DATA_PROPS = ["wait_time_days", "interpreter_availability_score"]
TEO_OBJECT_PROPS = ["precedes"]
NCODH_EXTRA_DATA_PROPS = ["parts_per_million"]  # added at merge time

#: (property local name, domain label, range label or xsd datatype)
NCODH_OBJECT_DOMAINS = [
    ("have_contaminants", "Available source of drinking water",
     "Chemical contaminant in drinking water"),
    ("have_education_level", "Person affected by nonclinical determinants",
     "Educational attainment level"),
    ("has_housing_condition", "Person affected by nonclinical determinants",
     "Poor housing"),
    ("resides_in_neighborhood", "Person affected by nonclinical determinants",
     "Neighborhood and built-in environment"),
    ("experiences_food_insecurity", "Person affected by nonclinical determinants",
     "Impact of food insecurity"),
    ("exposes_to_hazard", "Poor Workplace condition", "Occupational hazard exposure"),
    ("targets_population", "Marketing practices harmful to health",
     "Person affected by nonclinical determinants"),
    ("supported_by_community", "Person affected by nonclinical determinants",
     "Community support network erosion"),
]
NCODH_DATA_DOMAINS = [
    ("parts_per_million", "Chemical contaminant in drinking water", XSD.float),
    ("household_income_usd", "Person affected by nonclinical determinants", XSD.float),
    ("rent_burden_percent", "Poor housing", XSD.float),
    ("distance_to_grocery_km", "Neighborhood and built-in environment", XSD.float),
    ("crowding_index", "Overcrowding in house", XSD.float),
    ("wait_time_days", "Delayed care due to implicit bias", XSD.integer),
]


# ---------------------------------------------------------------------------
# tree expansion
# ---------------------------------------------------------------------------

def local_name(label: str) -> str:
    cleaned = "".join(c if c.isalnum() else "_" for c in label)
    while "__" in cleaned:
        cleaned = cleaned.replace("__", "_")
    return cleaned.strip("_")


def flatten(nodes, parent, out):
    for label, children in nodes:
        out.append((label, parent))
        flatten(children, label, out)


def filler_stream(patterns):
    """Deterministic unbounded-ish label stream from pattern x bank products."""
    for template, bank_m, bank_p in patterns:
        for m, p in itertools.product(bank_m, bank_p):
            yield template.format(m=m, p=p).replace("  ", " ").strip()


def expand_source(nucleus, budget, filler_attach, filler_patterns, used_labels):
    """Flatten a nucleus and pad it with filler leaves to the exact budget."""
    rows: list[tuple[str, str | None]] = []
    flatten(nucleus, None, rows)
    for label, _ in rows:
        if label.casefold() in used_labels:
            raise SystemExit(f"duplicate label in nucleus: {label}")
        used_labels.add(label.casefold())
    shortfall = budget - len(rows)
    if shortfall < 0:
        raise SystemExit(f"nucleus too large: {len(rows)} > {budget}")
    stream = filler_stream(filler_patterns)
    added = 0
    while added < shortfall:
        try:
            label = next(stream)
        except StopIteration:
            raise SystemExit(f"filler exhausted with {shortfall - added} to go")
        if label.casefold() in used_labels:
            continue
        used_labels.add(label.casefold())
        rows.append((label, filler_attach))
        added += 1
    assert len(rows) == budget
    return rows


def build_forest():
    """(label -> iri, label -> parent label, per-source class lists)."""
    used = set()
    source_rows = {"cdoh": [], "sdoh": [], "home": [], "teo": []}

    for category, budget in CDOH_BUDGETS.items():
        used.add(category.casefold())
        source_rows["cdoh"].append((category, None))
        attach, patterns = CDOH_FILLERS[category]
        rows = expand_source(CDOH_NUCLEUS[category], budget, attach,
                             patterns, used)
        rewired = [(label, parent if parent else category) for label, parent in rows]
        source_rows["cdoh"].extend(rewired)

    for key, root, nucleus, budget, attach, patterns in (
            ("sdoh", SDOH_ROOT, SDOH_NUCLEUS, SDOH_BUDGET, SDOH_FILLER_ATTACH,
             SDOH_FILLERS),
            ("home", HOME_ROOT, HOME_NUCLEUS, HOME_BUDGET, HOME_FILLER_ATTACH,
             HOME_FILLERS),
            ("teo", TEO_ROOT, TEO_NUCLEUS, TEO_BUDGET, TEO_FILLER_ATTACH,
             TEO_FILLERS)):
        used.add(root.casefold())
        source_rows[key].append((root, None))
        rows = expand_source(nucleus, budget, attach, patterns, used)
        source_rows[key].extend(
            (label, parent if parent else root) for label, parent in rows)

    assert len(source_rows["cdoh"]) == 317
    assert len(source_rows["sdoh"]) == SDOH_BUDGET + 1
    assert len(source_rows["home"]) == HOME_BUDGET + 1
    assert len(source_rows["teo"]) == TEO_BUDGET + 1

    namespaces = {"cdoh": CDOH_NS, "sdoh": SDOH_NS, "home": HOME_NS, "teo": TEO_NS}
    iri_of: dict[str, str] = {}
    parent_of: dict[str, str | None] = {}
    for key, rows in source_rows.items():
        for label, parent in rows:
            name = local_name(label)
            iri = namespaces[key] + name
            if label in iri_of or iri in iri_of.values():
                raise SystemExit(f"collision for {label}")
            iri_of[label] = iri
            parent_of[label] = parent
    assert len(iri_of) == 611
    return iri_of, parent_of, source_rows


# ---------------------------------------------------------------------------
# model assembly
# ---------------------------------------------------------------------------

def make_model(iri_of, parent_of, labels, props, iri, with_labels,
               domains=(), curie_prefixes=None):
    classes = []
    axioms = []
    annotations: dict[str, list] = {}
    for label in labels:
        class_iri = iri_of[label]
        classes.append(ClassDecl(iri=class_iri,
                                 label=label if with_labels else None))
        parent = parent_of[label]
        if parent is not None:
            axioms.append((class_iri, iri_of[parent]))
        if with_labels:
            annotations.setdefault(class_iri, []).append((RDFS.label, Literal(label)))

    domain_of = {name: (dom, rng) for name, dom, rng in domains}
    object_properties = []
    data_properties = []
    for namespace, names, kind in props:
        for name in names:
            prop_iri = namespace + name
            dom, rng = domain_of.get(name, (None, None))
            decl = PropertyDecl(
                iri=prop_iri, kind=kind,
                label=name.replace("_", " ") if with_labels else None,
                domain=iri_of[dom] if dom else None,
                range=(rng if (rng or "").startswith(XSD.string[:30]) else
                       iri_of[rng] if rng else None),
            )
            (object_properties if kind == "object" else data_properties).append(decl)
            if with_labels:
                annotations.setdefault(prop_iri, []).append(
                    (RDFS.label, Literal(name.replace("_", " "))))

    model = OntologyModel(
        ontology_iri=iri,
        classes=frozenset(classes),
        subclass_axioms=frozenset(axioms),
        object_properties=frozenset(object_properties),
        data_properties=frozenset(data_properties),
        individuals=frozenset(),
        annotations=normalize_annotations(annotations),
        axiom_tally=AxiomTally(),
    )
    model = replace(model, axiom_tally=tally_from_model(model))
    if curie_prefixes:
        model = annotate_curies(model, curie_prefixes)
    return model


def write_ontologies():
    iri_of, parent_of, source_rows = build_forest()
    onto_dir = FIXTURES / "ontologies"
    onto_dir.mkdir(parents=True, exist_ok=True)

    cdoh_labels = [label for label, _ in source_rows["cdoh"]]
    cdoh = make_model(iri_of, parent_of, cdoh_labels,
                      props=[(CDOH_NS, CDOH_OBJECT_PROPS, "object"),
                             (CDOH_NS, CDOH_DATA_PROPS, "data")],
                      iri="https://w3id.org/ncodh/cdoh", with_labels=False)
    tally = cdoh.axiom_tally
    assert (len(cdoh.classes), len(cdoh.object_properties),
            len(cdoh.data_properties)) == (317, 27, 19)
    assert tally.as_dict() == {"declaration": 363, "subclass": 312, "domain": 0,
                               "range": 0, "annotation": 0, "assertion": 0,
                               "total": 675, "headline": 675}

    sdoh = make_model(iri_of, parent_of, [l for l, _ in source_rows["sdoh"]],
                      props=[(SDOH_NS, SDOH_OBJECT_PROPS, "object"),
                             (SDOH_NS, SDOH_DATA_PROPS, "data")],
                      iri="https://w3id.org/ncodh/sdoh", with_labels=True)
    home = make_model(iri_of, parent_of, [l for l, _ in source_rows["home"]],
                      props=[(HOME_NS, HOME_OBJECT_PROPS, "object"),
                             (HOME_NS, HOME_DATA_PROPS, "data")],
                      iri="https://w3id.org/ncodh/home", with_labels=True)
    teo = make_model(iri_of, parent_of, [l for l, _ in source_rows["teo"]],
                     props=[(TEO_NS, TEO_OBJECT_PROPS, "object")],
                     iri="https://w3id.org/ncodh/teo", with_labels=True)

    # the merged ontology: HOME is re-parented under the social root, every
    # class is labeled and CURIE-annotated, and 14 properties carry
    # domain/range declarations
    ncodh_parent = dict(parent_of)
    ncodh_parent[HOME_ROOT] = SDOH_ROOT
    all_labels = [l for rows in source_rows.values() for l, _ in rows]
    object_domains = [(n, d, r) for n, d, r in NCODH_OBJECT_DOMAINS]
    data_domains = [(n, d, r) for n, d, r in NCODH_DATA_DOMAINS]
    ncodh = make_model(
        iri_of, ncodh_parent, all_labels,
        props=[(CDOH_NS, CDOH_OBJECT_PROPS, "object"),
               (CDOH_NS, CDOH_DATA_PROPS, "data"),
               (SDOH_NS, SDOH_OBJECT_PROPS, "object"),
               (SDOH_NS, SDOH_DATA_PROPS, "data"),
               (HOME_NS, HOME_OBJECT_PROPS, "object"),
               (HOME_NS, HOME_DATA_PROPS, "data"),
               (TEO_NS, TEO_OBJECT_PROPS, "object"),
               (NCODH_NS, NCODH_EXTRA_DATA_PROPS, "data")],
        iri="https://w3id.org/ncodh", with_labels=True,
        domains=object_domains + data_domains,
        curie_prefixes=SOURCE_PREFIXES)

    tally = ncodh.axiom_tally
    assert (len(ncodh.classes), len(ncodh.object_properties),
            len(ncodh.data_properties)) == (611, 41, 28)
    assert tally.as_dict() == {"declaration": 680, "subclass": 604, "domain": 14,
                               "range": 14, "annotation": 1291, "assertion": 0,
                               "total": 2603, "headline": 1312}, tally.as_dict()

    for name, model in (("cdoh", cdoh), ("sdoh", sdoh), ("home", home),
                        ("teo", teo), ("ncodh", ncodh)):
        write_rdfxml_file(model, onto_dir / f"{name}.owl")

    prefixes = dict(CORE_PREFIXES, **SOURCE_PREFIXES)
    (FIXTURES / "prefixes.json").write_text(
        json.dumps(prefixes, indent=2) + "\n", encoding="utf-8")

    # reparse checks: byte -> model equality and audits
    for name, model in (("cdoh", cdoh), ("ncodh", ncodh)):
        back = build_model(parse_rdfxml(onto_dir / f"{name}.owl"), prefixes)
        assert back == model, f"{name} does not round-trip"
    for model in (ncodh, cdoh, sdoh, home, teo):
        report = structural_audit(model)
        assert report.passed, report.to_json()

    # the four-source merge reproduces the merged class set
    policy = MergePolicy(
        root_alignment={iri_of[HOME_ROOT]: iri_of[SDOH_ROOT]},
        result_iri="https://w3id.org/ncodh")
    merged = merge([cdoh, sdoh, home, teo], policy)
    assert merged.class_iris() == ncodh.class_iris()
    assert len(merged.classes) == 611
    assert structural_audit(merged).passed

    (FIXTURES / "policies").mkdir(exist_ok=True)
    (FIXTURES / "policies" / "ncodh_merge.json").write_text(json.dumps({
        "collision_rule": "union-by-iri",
        "root_alignment": {iri_of[HOME_ROOT]: iri_of[SDOH_ROOT]},
        "curie_prefixes": SOURCE_PREFIXES,
        "result_iri": "https://w3id.org/ncodh",
    }, indent=2) + "\n", encoding="utf-8")

    (FIXTURES / "reference").mkdir(exist_ok=True)
    (FIXTURES / "reference" / "table3.json").write_text(json.dumps({
        "attribute_richness": 0.008876,
        "inheritance_richness": 0.98816,
        "relationship_richness": 0.12336,
        "axiom_class_ratio": 4.49905,
        "class_relation_ratio": 0.88713,
    }, indent=2) + "\n", encoding="utf-8")
    (FIXTURES / "reference" / "reported_counts_ncodh.json").write_text(json.dumps({
        "classes": 611, "axioms": 2603,
        "object_properties": 41, "data_properties": 28,
    }, indent=2) + "\n", encoding="utf-8")
    (FIXTURES / "reference" / "reported_counts_cdoh.json").write_text(json.dumps({
        "classes": 317, "axioms": 675,
        "object_properties": 27, "data_properties": 19,
    }, indent=2) + "\n", encoding="utf-8")
    return ncodh


# ---------------------------------------------------------------------------
# evaluation sheets and completed judgment files
# ---------------------------------------------------------------------------

EXCLUDE_REASONS = [
    "The child concept describes a different phenomenon than the parent",
    "No subsumption either way; the concepts sit in separate branches",
    "The pairing reads as thematic overlap, not a hierarchy",
    "The child belongs under a different parent entirely",
    "Too loose a connection to count as a parent-child link",
    "The concepts share vocabulary but not a hierarchy",
]


def write_sheets_and_judgments(ncodh):
    graph = build_graph(ncodh)
    sheets_dir = FIXTURES / "sheets"
    sheets_dir.mkdir(exist_ok=True)
    ontology_hash = hashlib.sha256(
        (FIXTURES / "ontologies" / "ncodh.owl").read_bytes()).hexdigest()

    sheet90 = sample_pairs(graph, quota=(32, 14, 44), seed=SEED_SHEET_90,
                           source_ontology="ncodh")
    (sheets_dir / "sheet90.csv").write_text(export_sheet(sheet90), encoding="utf-8")
    (sheets_dir / "sheet90.manifest.json").write_text(
        json.dumps(sheet_manifest(sheet90, ontology_hash), indent=2) + "\n",
        encoding="utf-8")

    sheet90t = sample_pairs(graph, quota=(32, 14, 44), seed=SEED_SHEET_90,
                            training_prefix=10, source_ontology="ncodh")
    (sheets_dir / "sheet90_training.csv").write_text(
        export_sheet(sheet90t), encoding="utf-8")
    (sheets_dir / "sheet90_training.manifest.json").write_text(
        json.dumps(sheet_manifest(sheet90t, ontology_hash), indent=2) + "\n",
        encoding="utf-8")

    # Completed judgment files: the inter-rater cells are 31 both-include /
    # 3 only-first / 20 only-second / 36 both-exclude, laid over the strata
    # so each judge also tracks the ground truth strongly (as real experts
    # would): judge 1 includes only related rows; judge 2 includes every
    # related row it agrees on plus a few unrelated ones.
    judgments_dir = FIXTURES / "judgments"
    judgments_dir.mkdir(exist_ok=True)
    related_rows = [i for i, p in enumerate(sheet90.pairs) if p.stratum != "unrelated"]
    unrelated_rows = [i for i, p in enumerate(sheet90.pairs) if p.stratum == "unrelated"]
    assert (len(related_rows), len(unrelated_rows)) == (46, 44)
    verdict_of = {}
    for row in related_rows[:31]:
        verdict_of[row] = "both_include"
    for row in related_rows[31:34]:
        verdict_of[row] = "only_first"
    for row in related_rows[34:46]:
        verdict_of[row] = "only_second"
    for row in unrelated_rows[:8]:
        verdict_of[row] = "only_second"
    for row in unrelated_rows[8:]:
        verdict_of[row] = "both_exclude"

    def answer(include, pair, row):
        if include:
            if pair.stratum == "grandparent":
                return ("", "Yes", "")
            return ("Yes", "", "")
        return ("No", "", EXCLUDE_REASONS[row % len(EXCLUDE_REASONS)])

    base_rows = export_sheet(sheet90).splitlines()
    for evaluator, key in (("evaluator1", "first"), ("evaluator2", "second")):
        out = [base_rows[0]]
        for row, line in enumerate(base_rows[1:]):
            verdict = verdict_of[row]
            include = verdict == "both_include" or verdict == f"only_{key}"
            child, farther, reason = answer(include, sheet90.pairs[row], row)
            prefix = line.rsplit(',"","",""', 1)[0]
            out.append(f'{prefix},"{child}","{farther}","{reason}"')
        (judgments_dir / f"{evaluator}.csv").write_text(
            "\n".join(out) + "\n", encoding="utf-8")

    ev1 = import_judgments((judgments_dir / "evaluator1.csv").read_text(), sheet90)
    ev2 = import_judgments((judgments_dir / "evaluator2.csv").read_text(), sheet90)
    r1 = ratings_from_judgments(ev1)
    r2 = ratings_from_judgments(ev2)
    kappa = cohens_kappa(r1, r2)
    assert kappa.kappa == Fraction(352, 697), kappa
    truth = [p.stratum != "unrelated" for p in sheet90.pairs]
    for ratings in (r1, r2):
        p_value = fisher_exact(confusion_matrix(ratings, truth))
        assert p_value < Fraction(1, 10000), float(p_value)
    return graph, ontology_hash


# ---------------------------------------------------------------------------
# reconstructed concordance corpus: 60 sessions, 276 prompts
# ---------------------------------------------------------------------------

OUTCOME_PLAN = ([Outcome.AGREED_CHILD] * 9 + [Outcome.RECOVERED_CHILD] * 5
                + [Outcome.NOT_RECOVERED] * 2 + [Outcome.PART_OF] * 3
                + [Outcome.TYPE_OF] * 1)
PROMPTS_PER_OUTCOME = {
    Outcome.AGREED_CHILD: 2, Outcome.RECOVERED_CHILD: 6, Outcome.NOT_RECOVERED: 6,
    Outcome.PART_OF: 4, Outcome.TYPE_OF: 4,
    Outcome.GRANDPARENT_CONFIRMED: 5, Outcome.UNRELATED_CONFIRMED: 5,
}

CONFIG = ProtocolConfig(backend="recorded:reconstructed-sessions")


def session_turns(pair, outcome, graph, rng, recovered_variant):
    """Template dialogue for one session; returns the asker/responder texts."""
    parent, child = pair.parent_label, pair.child_label
    lp, lc = parent.lower(), child.lower()
    assertion = CONFIG.assertion_template.format(parent=parent, child=child)
    followup = CONFIG.relation_template.format(parent=parent, child=child)
    challenge = CONFIG.challenge_template.format(parent=parent, count=10)

    if outcome == Outcome.AGREED_CHILD:
        return [
            (assertion,
             f"Yes, this is a valid parent-child relationship. {child} is a "
             f"specific form of {lp}."),
            ("What reasoning places it directly under the parent concept?",
             f"Every instance of {lc} is also an instance of {lp}; the child "
             "narrows the scope, so a direct IS-A link fits."),
        ]
    if outcome == Outcome.GRANDPARENT_CONFIRMED:
        return [
            (assertion,
             "No, not as a direct subclass. The link is real but skips a level."),
            (followup,
             f"{child} is best described as a grandchild of {parent}: an "
             "intermediate concept sits between them, so the chain is indirect."),
            ("Which intermediate concept would sit between them?",
             f"A narrower grouping of {lp} that still generalizes {lc} would "
             "occupy the middle level."),
            ("So the ontology should keep them two levels apart?",
             "That matches the structure better than a direct link."),
            ("Would you connect them directly anyway?",
             "I would keep the intermediate level; a direct IS-A edge would "
             "flatten the hierarchy."),
        ]
    if outcome == Outcome.UNRELATED_CONFIRMED:
        return [
            (assertion,
             "No, these concepts are not related hierarchically."),
            (followup,
             "Neither concept subsumes the other; they describe different "
             "phenomena and belong to separate branches."),
            (f'Could "{child}" fit anywhere beneath "{parent}"?',
             f"Unlikely; none of the natural subdivisions of {lp} would cover it."),
            (f'What would be a more fitting parent for "{child}"?',
             f"A concept describing its own domain would fit; {lp} does not."),
            ("So the sheet pairing is simply wrong?",
             "Correct, keeping them unconnected is the right call."),
        ]
    if outcome == Outcome.PART_OF:
        return [
            (assertion, "No, a subclass reading does not fit here."),
            (followup,
             f"{child} is a part of {lp} - a component relationship (meronymy), "
             "not a kind-of relationship."),
            ("Should the ontology model that distinction?",
             "Yes, a dedicated component relation would represent it better "
             "than IS-A."),
            ("Understood; any caveats?",
             "Only that component relationships deserve their own hierarchy."),
        ]
    if outcome == Outcome.TYPE_OF:
        return [
            (assertion, "No, not in the strict subclass sense used by the sheet."),
            (followup,
             f"It reads as a type-of relationship: {lc} is a type of {lp} in "
             "everyday usage, which is close to, but not identical with, a "
             "formal IS-A link."),
            ("Is that distinction meaningful here?",
             "Mostly terminological; the classification is close to subclass "
             "semantics."),
            ("Noted - anything else?", "Nothing further."),
        ]

    # challenged denials: recovered or not recovered
    enumeration = build_enumeration(pair, outcome, graph, rng, recovered_variant)
    listing = "\n".join(f"{i}. {item}" for i, item in enumerate(enumeration, 1))
    turns = [
        (assertion,
         "No, these concepts do not share a strict IS-A relationship."),
        (followup,
         f"They can have a distant hierarchical relationship: {lp} covers "
         f"several conditions, and {lc} could be one of them at a lower level."),
        ("Why not a direct link?",
         "The middle level groups similar conditions together, so the child "
         "sits two steps below."),
        (challenge,
         f'Concepts with IS-A relationships to "{parent}" include:\n{listing}'),
    ]
    if outcome == Outcome.RECOVERED_CHILD:
        matched = match_enumeration(child, parent, enumeration)
        assert matched, (child, enumeration)
        turns += [
            (f'You listed "{matched}" - is that the same concept as "{child}"?',
             "Essentially yes; the phrasing differs but the concept is the same."),
            ("Does that not contradict the earlier answer?",
             "It does suggest the direct link is defensible after all."),
        ]
    else:
        turns += [
            (f'Is "{child}" among those concepts?',
             "It is not; the ten listed cover the main subdivisions."),
            ("Where would it belong instead?",
             "Beneath one of the listed items, a further level down."),
        ]
    return turns


def build_enumeration(pair, outcome, graph, rng, recovered_variant):
    """Ten listed concepts; contains the child (possibly paraphrased) only
    for recovered sessions."""
    child, parent = pair.child_label, pair.parent_label
    pool = []
    for node in sorted(graph.nodes - {graph.root}):
        label = graph.labels[node]
        if label in (child, parent):
            continue
        if match_enumeration(child, parent, [label]):
            continue  # a filler must never accidentally cover the child
        pool.append(label)
    fillers = rng.sample(pool, 9 if outcome == Outcome.RECOVERED_CHILD else 10)
    fillers = [f.lower() for f in fillers]
    if outcome == Outcome.NOT_RECOVERED:
        return fillers
    if recovered_variant == "paraphrase":
        item = f"{child.lower()} related conditions"
    else:
        item = child.lower()
    items = fillers[:]
    items.insert(rng.randrange(len(items) + 1), item)
    return items


def write_corpus(graph, ontology_hash):
    corpus_dir = FIXTURES / "corpus"
    sessions_dir = corpus_dir / "sessions"
    sessions_dir.mkdir(parents=True, exist_ok=True)

    sheet = sample_pairs(graph, quota=(20, 20, 20), seed=SEED_SHEET_60,
                         source_ontology="ncodh")
    (corpus_dir / "sheet.csv").write_text(export_sheet(sheet), encoding="utf-8")
    (corpus_dir / "manifest.json").write_text(
        json.dumps(sheet_manifest(sheet, ontology_hash), indent=2) + "\n",
        encoding="utf-8")

    child_rows = [i for i, p in enumerate(sheet.pairs) if p.stratum == "child"]
    outcome_of = {}
    for row, outcome in zip(child_rows, OUTCOME_PLAN):
        outcome_of[row] = outcome
    for i, p in enumerate(sheet.pairs):
        if p.stratum == "grandparent":
            outcome_of[i] = Outcome.GRANDPARENT_CONFIRMED
        elif p.stratum == "unrelated":
            outcome_of[i] = Outcome.UNRELATED_CONFIRMED

    rng = random.Random(SEED_CORPUS_TEXT)
    recovered_seen = 0
    results = []
    total_prompts = 0
    for row, pair in enumerate(sheet.pairs):
        outcome = outcome_of[row]
        variant = None
        if outcome == Outcome.RECOVERED_CHILD:
            variant = "paraphrase" if recovered_seen < 2 else "verbatim"
            recovered_seen += 1
        exchanges = session_turns(pair, outcome, graph, rng, variant)
        assert len(exchanges) == PROMPTS_PER_OUTCOME[outcome], (row, outcome)
        turns = []
        base_ts = 1_690_000_000.0 + row * 600
        for i, (prompt, reply) in enumerate(exchanges):
            turns.append(Turn("asker", prompt, base_ts + i * 40))
            turns.append(Turn("responder", reply, base_ts + i * 40 + 15))
        transcript = Transcript(pair=pair, turns=tuple(turns),
                                backend_id=CONFIG.backend)
        transcript.validate_structure()
        got = classify_outcome(transcript, CONFIG)
        assert got == outcome, (row, outcome, got)
        write_transcript(transcript, sessions_dir / f"session_{row:02d}.jsonl")
        results.append(SessionResult(transcript, got))
        total_prompts += transcript.prompt_count

    report = aggregate(results, sheet)
    assert report.prompt_count == 276, report.prompt_count
    assert report.counts == {
        Outcome.AGREED_CHILD: 9, Outcome.RECOVERED_CHILD: 5,
        Outcome.NOT_RECOVERED: 2, Outcome.PART_OF: 3, Outcome.TYPE_OF: 1,
        Outcome.GRANDPARENT_CONFIRMED: 20, Outcome.UNRELATED_CONFIRMED: 20,
    }, report.counts

    (corpus_dir / "README.md").write_text(
        "# Recorded concordance corpus\n\n"
        "Synthetic, deterministic fixture generated by scripts/make_fixtures.py:\n"
        "a 60-session validation run over the bundled 611-class ontology\n"
        "(20 child, 20 grandparent, 20 unrelated pairs; 276 prompts in total).\n"
        "Dialogue text is templated, not captured from a live model; outcomes\n"
        "are scripted to a fixed plan and verified by classify_outcome at\n"
        "generation time.\n", encoding="utf-8")
    return report


def main():
    FIXTURES.mkdir(exist_ok=True)
    ncodh = write_ontologies()
    graph, ontology_hash = write_sheets_and_judgments(ncodh)
    report = write_corpus(graph, ontology_hash)
    print("fixtures written to", FIXTURES)
    print("ncodh:", len(ncodh.classes), "classes,",
          ncodh.axiom_tally.total, "axioms in total")
    print("corpus:", report.pair_count, "sessions,", report.prompt_count, "prompts")


if __name__ == "__main__":
    main()
