"""Built-in stop lists: common English function words and Java-profile keywords."""

ENGLISH = frozenset("""
a about above after again against all also am an and any are aren as at be because been before
being below between both but by can cannot could couldn did didn do does doesn doing don down
during each either else etc even ever every few for from further get gets had hadn has hasn have
haven having he her here hers herself him himself his how however i if in into is isn it its
itself just let ll me more most much must mustn my myself neither no nor not now of off often on
once only or other otherwise our ours ourselves out over own per rather re same shall shan she
should shouldn since so some such than that the their theirs them themselves then there these
they this those through thus to too under until up upon us ve very via was wasn we were weren
what when where whether which while who whom whose why will with within without won would
wouldn yet you your yours yourself yourselves
""".split())

JAVA_KEYWORDS = frozenset("""
abstract assert boolean break byte case catch char class const continue default do double else
enum extends final finally float for goto if implements import instanceof int interface long
native new package private protected public return short static strictfp super switch
synchronized this throw throws transient try void volatile while true false null var record
yield sealed permits string object integer override
""".split())

# javadoc / annotation noise that survives comment cleaning
DOC_TAGS = frozenset("param return returns throws exception see since author version link code inheritdoc deprecated".split())

DEFAULT = ENGLISH | JAVA_KEYWORDS | DOC_TAGS
