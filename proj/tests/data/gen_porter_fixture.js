// Regenerates porter_fixture.tsv from the reference JS implementation.
// Usage: npm install porter-stemmer && node gen_porter_fixture.js > porter_fixture.tsv
const st = require('porter-stemmer').stemmer;

const paperExamples = [
  'caresses','ponies','ties','caress','cats','feed','agreed','plastered','bled',
  'motoring','sing','conflated','troubled','sized','hopping','tanned','falling',
  'hissing','fizzed','failing','filing','happy','sky','relational','conditional',
  'rational','valenci','hesitanci','digitizer','conformabli','radicalli',
  'differentli','vileli','analogousli','vietnamization','predication','operator',
  'feudalism','decisiveness','hopefulness','callousness','formaliti','sensitiviti',
  'sensibiliti','triplicate','formative','formalize','electriciti','electrical',
  'hopeful','goodness','revival','allowance','inference','airliner','gyroscopic',
  'adjustable','defensible','irritant','replacement','adjustment','dependent',
  'adoption','homologou','communism','activate','angulariti','homologous',
  'effective','bowdlerize','probate','rate','cease','controll','roll',
];

const common = [
  'a','an','the','of','and','to','in','is','it','you','that','he','was','for','on',
  'are','as','with','his','they','i','at','be','this','have','from','or','one','had',
  'by','word','but','not','what','all','were','we','when','your','can','said','there',
  'use','each','which','she','do','how','their','if','will','up','other','about','out',
  'many','then','them','these','so','some','her','would','make','like','him','into',
  'time','has','look','two','more','write','go','see','number','no','way','could',
  'people','my','than','first','water','been','call','who','oil','its','now','find',
  'long','down','day','did','get','come','made','may','part',
  'abandon','abandoned','abandonment','absorb','absorption','abstract','abstraction',
  'accelerate','acceleration','accelerator','accept','acceptable','acceptance','accepted',
  'access','accessibility','accessible','accommodate','accommodation','accompany',
  'accomplish','accomplishment','accordance','according','account','accountability',
  'accumulate','accumulation','accuracy','accurate','accurately','achieve','achievement',
  'acknowledge','acknowledgement','acquire','acquisition','action','activation','active',
  'actively','activity','adapt','adaptation','adaptive','addition','additional',
  'additionally','address','adequate','adequately','adjacent','adjust','adjusted',
  'administration','administrative','admission','advance','advanced','advancement',
  'advantage','advantageous','adverse','advertise','advertisement','advisory','advocate',
  'affect','affection','aggregate','aggregation','agricultural','agriculture',
  'algorithm','algorithmic','alignment','allocate','allocation','allow','allowed',
  'alternative','alternatively','ambiguity','ambiguous','amplifier','amplify','analogy',
  'analyse','analysis','analytical','analyze','anniversary','announce','announcement',
  'annotate','annotation','annual','annually','anticipate','anticipation','apparatus',
  'apparent','apparently','appeal','appearance','applicable','application','applied',
  'apply','appoint','appointment','appreciate','appreciation','approach','appropriate',
  'approval','approve','approximate','approximately','approximation','arbitrary',
  'architecture','argument','arrange','arrangement','articulate','artificial',
  'assemble','assembly','assess','assessment','assign','assignment','assist',
  'assistance','assistant','associate','association','assume','assumption','assurance',
  'assure','atmosphere','atmospheric','attach','attachment','attempt','attend',
  'attendance','attention','attract','attraction','attractive','attribute','attribution',
  'authority','authorization','authorize','automate','automatic','automatically',
  'automation','availability','available','average','aviation','avoidance','awareness',
  'balance','bandwidth','barrier','baseline','basically','battery','behavior',
  'behavioral','believe','benefit','beneficial','boundary','brightness','broadcast',
  'calculate','calculation','calculator','calibrate','calibration','capability',
  'capable','capacity','carefully','category','categorical','causality','celebrate',
  'celebration','central','centralize','certainty','challenge','characterize',
  'characteristic','circulate','circulation','circumstance','citation','classify',
  'classification','classifier','cluster','clustering','cognition','cognitive',
  'collaborate','collaboration','collaborative','collect','collection','collective',
  'combination','combine','comfortable','command','comment','commentary','commercial',
  'commission','commit','commitment','committee','communicate','communication',
  'community','comparable','comparative','compare','comparison','compatibility',
  'compatible','compensate','compensation','compete','competition','competitive',
  'compilation','compile','compiler','complete','completely','completion','complexity',
  'compliance','complicate','complication','component','compose','composition',
  'comprehensive','compression','computation','computational','compute','computer',
  'concentrate','concentration','concept','conceptual','concern','conclude','conclusion',
  'condition','conditional','conduct','conference','confidence','configuration',
  'configure','confirm','confirmation','conflict','conjunction','connect','connection',
  'connectivity','consequence','consequently','conservation','conservative','consider',
  'considerable','considerably','consideration','consist','consistency','consistent',
  'consistently','constant','constantly','constitute','constraint','construct',
  'construction','consult','consultation','consume','consumer','consumption','contact',
  'contain','container','contemporary','context','contextual','continental','continue',
  'continuous','continuously','contract','contradiction','contrast','contribute',
  'contribution','convenience','convenient','convention','conventional','convergence',
  'conversation','conversion','convert','convey','conviction','convince','cooperate',
  'cooperation','coordinate','coordination','correlate','correlation','correspond',
  'correspondence','corresponding','corruption','creation','creative','creativity',
  'credibility','criterion','critical','critically','criticism','criticize','crucial',
  'cultivate','cultural','culture','curiosity','curious','currently','curriculum',
  'customer','database','debate','decade','decision','declaration','declare','decline',
  'decompose','decomposition','decrease','dedicate','dedication','defend','defense',
  'deficiency','define','definition','definitely','degradation','degree','deliver',
  'delivery','demonstrate','demonstration','denominator','density','department',
  'departure','dependence','dependency','deployment','deposit','depression','derive',
  'derivation','derivative','describe','description','descriptive','designate',
  'designation','desirable','destination','destruction','detect','detection','detector',
  'determine','determination','develop','development','developer','deviation','device',
  'diagnose','diagnosis','diagnostic','dictionary','difference','different',
  'differential','differentiate','difficulty','dimension','dimensional','direction',
  'directly','director','directory','disability','disadvantage','disagree',
  'disagreement','disappear','disappointment','discipline','disclose','disclosure',
  'discover','discovery','discrete','discriminate','discrimination','discussion',
  'distance','distinguish','distribute','distribution','diversity','division',
  'document','documentation','domain','dominance','dominant','dominate','domination',
  'duplicate','duplication','durability','durable','duration','dynamic','dynamically',
  'economic','economical','economy','edition','editor','editorial','education',
  'educational','effectiveness','efficiency','efficient','efficiently','elaborate',
  'election','electricity','electronic','element','elementary','eliminate',
  'elimination','embedding','emergence','emergency','emission','emotion','emotional',
  'emphasis','emphasize','empirical','employment','enable','encode','encoder',
  'encounter','encourage','encouragement','endurance','energy','enforce','enforcement',
  'engage','engagement','engineer','engineering','enhance','enhancement','enormous',
  'ensure','entertainment','enthusiasm','entity','entrance','environment',
  'environmental','equality','equation','equilibrium','equipment','equivalence',
  'equivalent','error','escalation','essential','essentially','establish',
  'establishment','estimate','estimation','evaluate','evaluation','evaluator','event',
  'eventually','evidence','evident','evolution','evolutionary','evolve','examination',
  'examine','example','exceed','excellence','excellent','exception','exceptional',
  'excessive','exchange','excitement','exclusion','exclusive','execute','execution',
  'exercise','exhibit','exhibition','existence','expand','expansion','expect',
  'expectation','expenditure','expense','expensive','experience','experiment',
  'experimental','experimentation','expert','expertise','explain','explanation',
  'explicit','explicitly','exploit','exploitation','exploration','explore','exponential',
  'expose','exposure','express','expression','extend','extension','extensive','extent',
  'external','extract','extraction','extractor','extreme','extremely','facilitate',
  'facility','factor','factorization','faculty','failure','fairness','familiar',
  'family','fashion','feasibility','feasible','feature','federal','feedback','fiction',
  'filter','finally','financial','finding','finite','flexibility','flexible',
  'fluctuation','focus','follow','following','formal','formally','format','formation',
  'formula','formulate','formulation','foundation','fraction','fragment','framework',
  'frequency','frequent','frequently','function','functional','functionality',
  'fundamental','furthermore','gather','general','generalize','generalization',
  'generally','generate','generation','generator','generic','genuine','global',
  'globally','government','gradient','gradual','gradually','graduate','graduation',
  'grammar','grammatical','gratitude','gravity','guarantee','guidance','guideline',
  'handle','happiness','hardware','harmony','hazard','headline','heading','height',
  'heritage','hesitate','hierarchy','highlight','historical','history','horizon',
  'horizontal','hospital','hypothesis','hypothetical','identical','identification',
  'identify','identity','ignorance','ignore','illustrate','illustration','imagination',
  'imagine','imitation','immediate','immediately','impact','implement','implementation',
  'implication','implicit','importance','important','impose','impossible','impression',
  'improve','improvement','incentive','incidence','incident','inclusion','inclusive',
  'incorporate','increase','increasingly','incremental','independence','independent',
  'independently','indicate','indication','indicator','individual','individually',
  'induce','induction','industrial','industry','inevitable','inference','infinite',
  'inflation','influence','influential','information','informative','infrastructure',
  'inherent','inhibit','initial','initialize','initially','initiate','initiative',
  'injection','innovation','innovative','input','insert','insertion','insight',
  'inspection','inspiration','inspire','install','installation','instance','instant',
  'institution','institutional','instruction','instrument','instrumental','insurance',
  'integral','integrate','integration','integrity','intellectual','intelligence',
  'intelligent','intend','intense','intensity','intensive','intention','interact',
  'interaction','interactive','interface','interfere','interference','internal',
  'internally','international','interpret','interpretation','interмеханизм',
  'interrupt','interruption','intersection','interval','intervention','interview',
  'introduce','introduction','intuition','intuitive','invariant','invasion','invent',
  'invention','inventory','invert','investigate','investigation','investigator',
  'investment','invitation','invite','involve','involvement','irrelevant','isolate',
  'isolation','iterate','iteration','iterative','judgment','junction','justice',
  'justification','justify','keyboard','keyword','knowledge','laboratory','language',
  'leadership','learning','lecture','legislation','legislative','legitimate','length',
  'liability','liberal','liberty','library','license','lifetime','likelihood','limit',
  'limitation','linear','linguistic','literacy','literal','literally','literary',
  'literature','locate','location','logical','logically','machine','magnitude',
  'maintain','maintenance','majority','management','mandatory','manipulate',
  'manipulation','manual','manually','manufacture','manufacturer','margin','marginal',
  'mathematical','mathematics','matrix','maximize','maximum','meaningful','measure',
  'measurement','mechanical','mechanism','medical','medicine','medieval','membership',
  'memorial','memory','mental','mention','merchant','metabolism','metadata','method',
  'methodology','metric','migration','military','minimal','minimize','minimum',
  'minister','ministry','minority','mission','mixture','mobility','model','moderate',
  'modification','modify','modular','module','molecular','molecule','momentum',
  'monitor','monitoring','morphology','motivate','motivation','movement','multiple',
  'multiplication','multiply','mutation','mutual','mystery','narrative','national',
  'nationality','natural','naturally','navigate','navigation','necessary','necessity',
  'negative','negotiate','negotiation','neighborhood','network','neural','neutral',
  'nevertheless','nomination','normalize','normalization','notation','notification',
  'notify','notion','nuclear','nucleus','numerical','numerous','nutrition','objective',
  'obligation','observation','observe','observer','obstacle','obtain','obvious',
  'obviously','occasion','occasional','occasionally','occupation','occupy','occur',
  'occurrence','offense','offensive','official','officially','operate','operation',
  'operational','operator','opinion','opponent','opportunity','oppose','opposite',
  'opposition','optimal','optimization','optimize','optimizer','option','optional',
  'order','ordinary','organic','organism','organization','organizational','organize',
  'orientation','origin','original','originally','originate','outcome','output',
  'overall','overcome','overhead','overlap','overview','ownership','package',
  'parallel','parameter','partial','partially','participant','participate',
  'participation','particular','particularly','partition','partnership','passage',
  'passenger','passive','patience','patient','pattern','payment','penalty',
  'perceive','percentage','perception','perfect','perfectly','perform','performance',
  'period','periodic','permanent','permission','permit','persist','persistence',
  'persistent','personal','personality','personally','perspective','persuade',
  'phenomenon','philosophy','physical','physically','physician','physics','pipeline',
  'platform','pleasure','plentiful','pointer','policy','political','politically',
  'politician','politics','pollution','popular','popularity','population','portion',
  'position','positive','positively','possess','possession','possibility','possible',
  'possibly','potential','potentially','poverty','practical','practically','practice',
  'precede','precedent','precise','precisely','precision','predict','predictable',
  'prediction','predictor','prefer','preference','preliminary','preparation','prepare',
  'presence','present','presentation','preservation','preserve','president','pressure',
  'presumably','prevent','prevention','previous','previously','primary','primarily',
  'principal','principle','priority','privacy','private','probability','probable',
  'probably','procedure','proceed','proceedings','process','processing','processor',
  'produce','producer','production','productive','productivity','profession',
  'professional','professor','profile','profit','profitable','program','progress',
  'progressive','prohibit','project','projection','prominent','promise','promote',
  'promotion','prompt','proof','propagate','propagation','proper','properly',
  'property','proportion','proportional','proposal','propose','proposition',
  'prosecution','prospect','protect','protection','protective','protein','protest',
  'protocol','prototype','provide','provider','provision','psychological','psychology',
  'publication','publish','publisher','punishment','purchase','pursue','pursuit',
  'qualification','qualify','quality','quantify','quantitative','quantity','quarter',
  'query','question','questionnaire','rapidly','rational','reaction','readily',
  'reality','realize','reasonable','reasonably','reasoning','recall','receive',
  'receiver','recent','recently','reception','recognition','recognize','recommend',
  'recommendation','reconstruction','record','recovery','recurrent','recursion',
  'recursive','reduce','reduction','redundancy','redundant','reference','refine',
  'refinement','reflect','reflection','reform','refuse','regard','regardless','region',
  'regional','register','registration','regression','regular','regularly','regulate',
  'regulation','regulatory','reinforce','reinforcement','reject','rejection','relate',
  'relation','relationship','relative','relatively','relevance','relevant',
  'reliability','reliable','relief','religion','religious','reluctant','remark',
  'remarkable','remember','removal','remove','render','repeat','repeatedly',
  'repetition','replication','report','represent','representation','representative',
  'reproduce','reproduction','reputation','request','requirement','research',
  'researcher','resemble','reservation','reserve','residence','resident','residual',
  'resistance','resistant','resolution','resolve','resource','respect','respectively',
  'respond','response','responsibility','responsible','restore','restrict',
  'restriction','result','retain','retention','retrieval','retrieve','revelation',
  'revenue','reverse','review','revision','revolution','revolutionary','rhythm',
  'robust','robustness','rotation','routine','saturation','scale','scenario',
  'schedule','scheme','scholar','scholarship','science','scientific','scientist',
  'search','secondary','section','sector','security','segment','segmentation',
  'select','selection','selective','semantic','semantics','seminar','sensitive',
  'sensitivity','sentence','separate','separately','separation','sequence',
  'sequential','serious','seriously','session','settlement','several','severe',
  'shortage','signal','signature','significance','significant','significantly',
  'similar','similarity','similarly','simulate','simulation','simultaneous',
  'simultaneously','situation','skeptical','society','software','solution','solve',
  'sophisticated','specialist','specialize','specially','specific','specifically',
  'specification','specify','spectrum','speculation','stability','stable','standard',
  'statement','statistical','statistics','status','storage','strategic','strategy',
  'strength','strengthen','structural','structure','struggle','subsequent',
  'subsequently','substantial','substantially','substitute','substitution','subtle',
  'suburban','succeed','success','successful','successfully','succession','successive',
  'sufficient','sufficiently','suggest','suggestion','suitable','summary','summarize',
  'supervision','supervisor','supplement','support','suppose','suppress','suppression',
  'surround','surveillance','survey','survival','survive','suspect','suspension',
  'sustain','sustainable','syndrome','synthesis','synthetic','systematic',
  'systematically','technical','technically','technician','technique','technological',
  'technology','temporal','temporary','tendency','tension','terminal','terminate',
  'termination','terminology','territory','testify','testimony','theoretical',
  'theory','therapy','thereby','therefore','threshold','throughput','tokenize',
  'tokenizer','tokenization','tolerance','tolerate','tradition','traditional',
  'traditionally','transaction','transfer','transform','transformation','transformer',
  'transition','translate','translation','transmission','transmit','transparency',
  'transparent','transport','transportation','treatment','tremendous','trigger',
  'typical','typically','ultimate','ultimately','uncertainty','underlying',
  'understand','understanding','undertake','unexpected','unfortunately','uniform',
  'unique','universal','universe','university','unlikely','unprecedented','update',
  'upgrade','urban','urgent','utility','utilize','utilization','vacation','validate',
  'validation','validity','valuable','variable','variance','variation','variety',
  'various','vegetable','vehicle','verification','verify','version','vertical',
  'victory','violation','violence','violent','virtual','virtually','visibility',
  'visible','vision','visual','visualize','vocabulary','voluntary','volunteer',
  'vulnerable','weakness','welfare','whatever','whereas','widespread','willingness',
  'wisdom','withdraw','witness','wonderful','workshop','yield'
];

const bases = ['run','hope','relate','general','electric','oscillate','sense','active',
  'nation','operate','triple','iron','analogy','predicate','feudal','decide','callous',
  'formal','sensible','charge','control','roll','sky','happy','die','tie','agree',
  'fall','file','size','motor','conflate','trouble','irritate','replace','adjust',
  'depend','adopt','commune','angular','effect','probe','rate','cease','valid','grand',
  'deep','wide','quick','slow','soft'];
const suffixes = ['','s','es','ed','ing','ation','ations','ization','izations','ative',
  'ally','ously','fulness','ousness','ality','ivity','ibility','icate','ical','icity',
  'ful','ness','ance','ence','er','able','ible','ant','ement','ment','ent','ion','ism',
  'ate','iti','ous','ive','ize','al','ies','y','eed','ly','ers','ings','est','ests'];

const edge = ['','a','b','i','y','as','is','be','by','do','my','ox','up','we','ye',
  'sses','ies','ss','s','eed','ee','ed','ing','ion','tion','ation','oed','eing',
  'yyy','bbb','aaa','euou','rrrr','zzzz','qqqq'];

const seen = new Set();
const out = [];
for (const list of [paperExamples, common, bases, edge]) {
  for (const w of list) {
    const lw = w.toLowerCase();
    if (!/^[a-z]*$/.test(lw)) continue;
    if (seen.has(lw)) continue;
    seen.add(lw);
    out.push(lw);
  }
}
for (const b of bases) for (const s of suffixes) {
  const w = b + s;
  if (seen.has(w)) continue;
  seen.add(w);
  out.push(w);
}
out.sort();
for (const w of out) process.stdout.write(w + '\t' + st(w) + '\n');
