"""IRIs of the RDF/RDFS/OWL vocabulary terms the toolkit recognises."""

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
RDF_FIRST = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first"
RDF_REST = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest"
RDF_NIL = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil"

RDFS_SUBCLASSOF = "http://www.w3.org/2000/01/rdf-schema#subClassOf"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"

OWL_CLASS = "http://www.w3.org/2002/07/owl#Class"
OWL_OBJECT_PROPERTY = "http://www.w3.org/2002/07/owl#ObjectProperty"
OWL_RESTRICTION = "http://www.w3.org/2002/07/owl#Restriction"
OWL_ON_PROPERTY = "http://www.w3.org/2002/07/owl#onProperty"
OWL_SOME_VALUES_FROM = "http://www.w3.org/2002/07/owl#someValuesFrom"
OWL_INTERSECTION_OF = "http://www.w3.org/2002/07/owl#intersectionOf"
OWL_UNION_OF = "http://www.w3.org/2002/07/owl#unionOf"
OWL_THING = "http://www.w3.org/2002/07/owl#Thing"
OWL_NOTHING = "http://www.w3.org/2002/07/owl#Nothing"

# Annotation properties commonly used for synonyms in OBO-family ontologies.
OBO_HAS_EXACT_SYNONYM = "http://www.geneontology.org/formats/oboInOwl#hasExactSynonym"
OBO_HAS_SYNONYM = "http://www.geneontology.org/formats/oboInOwl#hasSynonym"
