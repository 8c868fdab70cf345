package headfirst.factorymethod;

public class ChicagoStyleClamPizza extends Pizza {
    public ChicagoStyleClamPizza() {
        name = "Chicago Style Clam Pizza";
        toppings.add("Grated Reggiano Cheese");
    }
}
